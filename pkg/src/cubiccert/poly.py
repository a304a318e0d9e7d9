"""Exact sparse multivariate polynomials over the rationals and prime fields.

Coefficients are either ``fractions.Fraction`` (always in lowest terms) or
plain ints in ``[0, p)`` for a prime field.  Polynomials are immutable
canonical term maps: no zero coefficient is ever stored, so equality of
polynomials is equality of dicts.
"""

from fractions import Fraction
from functools import lru_cache

from .errors import (
    ArityMismatch,
    DomainMismatch,
    IndexOutOfRange,
    ZeroInput,
    NotUnivariate,
)


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class RationalField:
    """The field of rational numbers; values are Fractions."""

    char = 0

    def coerce(self, v):
        return Fraction(v)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return Fraction(1) / a

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField:
    """GF(p) for a prime p; values are ints in [0, p)."""

    def __init__(self, p):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p

    def coerce(self, v):
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise ZeroDivisionError(
                    f"denominator of {v} not invertible mod {self.p}")
            return v.numerator * pow(v.denominator, -1, self.p) % self.p
        return int(v) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"0 not invertible mod {self.p}")
        return pow(a, -1, self.p)

    def zero(self):
        return 0

    def one(self):
        return 1

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def _check_compatible(a, b):
    if a.arity != b.arity:
        raise ArityMismatch(f"arities differ: {a.arity} vs {b.arity}")
    if a.domain != b.domain:
        raise DomainMismatch(f"domains differ: {a.domain} vs {b.domain}")


class Polynomial:
    """Canonical sparse polynomial: {exponent tuple -> nonzero coefficient}."""

    __slots__ = ("arity", "domain", "terms")

    def __init__(self, arity, domain, terms):
        clean = {}
        zero = domain.zero()
        for mono, coeff in terms.items():
            if len(mono) != arity:
                raise ArityMismatch(
                    f"monomial {mono} does not have arity {arity}")
            c = domain.coerce(coeff)
            if c != zero:
                clean[tuple(mono)] = c
        self.arity = arity
        self.domain = domain
        self.terms = clean

    # --- constructors ---

    @classmethod
    def zero(cls, arity, domain=QQ):
        return cls(arity, domain, {})

    @classmethod
    def constant(cls, value, arity, domain=QQ):
        return cls(arity, domain, {(0,) * arity: value})

    @classmethod
    def variable(cls, i, arity, domain=QQ):
        if not 0 <= i < arity:
            raise IndexOutOfRange(f"variable {i} out of range for arity {arity}")
        mono = tuple(1 if j == i else 0 for j in range(arity))
        return cls(arity, domain, {mono: 1})

    # --- structure ---

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        """Max total degree, or -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self, degree=None):
        degs = {sum(m) for m in self.terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def variables_used(self):
        used = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    used.add(i)
        return used

    def degree_in(self, i):
        if not 0 <= i < self.arity:
            raise IndexOutOfRange(f"variable {i} out of range")
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    # --- ring operations ---

    def __add__(self, other):
        _check_compatible(self, other)
        d = self.domain
        terms = dict(self.terms)
        zero = d.zero()
        for m, c in other.terms.items():
            s = d.add(terms.get(m, zero), c)
            if s == zero:
                terms.pop(m, None)
            else:
                terms[m] = s
        return _raw(self.arity, d, terms)

    def __neg__(self):
        d = self.domain
        return _raw(self.arity, d, {m: d.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        _check_compatible(self, other)
        d = self.domain
        zero = d.zero()
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = d.add(terms.get(m, zero), d.mul(c1, c2))
                if s == zero:
                    terms.pop(m, None)
                else:
                    terms[m] = s
        return _raw(self.arity, d, terms)

    def scale(self, scalar):
        d = self.domain
        c0 = d.coerce(scalar)
        if c0 == d.zero():
            return Polynomial.zero(self.arity, d)
        return _raw(self.arity, d,
                    {m: d.mul(c, c0) for m, c in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Polynomial.constant(1, self.arity, self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # --- evaluation and substitution ---

    def evaluate(self, point):
        if len(point) != self.arity:
            raise ArityMismatch(
                f"point has {len(point)} coordinates, arity is {self.arity}")
        d = self.domain
        pt = [d.coerce(v) for v in point]
        acc = d.zero()
        for m, c in self.terms.items():
            val = c
            for x, e in zip(pt, m):
                for _ in range(e):
                    val = d.mul(val, x)
            acc = d.add(acc, val)
        return acc

    def substitute(self, images):
        """Evaluate at polynomial images (a ring homomorphism)."""
        if len(images) != self.arity:
            raise ArityMismatch(
                f"{len(images)} images for arity {self.arity}")
        if not images:
            raise ArityMismatch("cannot substitute into a 0-ary polynomial")
        tgt_arity = images[0].arity
        d = images[0].domain
        if d != self.domain:
            raise DomainMismatch("image domain differs from target domain")
        for im in images:
            if im.arity != tgt_arity or im.domain != d:
                raise ArityMismatch("images disagree on arity or domain")
        acc = Polynomial.zero(tgt_arity, d)
        # cache powers of each image
        powers = [{0: Polynomial.constant(1, tgt_arity, d)} for _ in images]
        for m, c in self.terms.items():
            term = Polynomial.constant(c, tgt_arity, d)
            for i, e in enumerate(m):
                if e:
                    if e not in powers[i]:
                        prev = max(k for k in powers[i] if k <= e)
                        cur = powers[i][prev]
                        for _ in range(e - prev):
                            cur = cur * images[i]
                        powers[i][e] = cur
                    term = term * powers[i][e]
            acc = acc + term
        return acc

    def partial(self, i):
        if not 0 <= i < self.arity:
            raise IndexOutOfRange(f"variable {i} out of range")
        d = self.domain
        terms = {}
        zero = d.zero()
        for m, c in self.terms.items():
            if m[i] == 0:
                continue
            nm = tuple(e - 1 if j == i else e for j, e in enumerate(m))
            nc = d.add(terms.get(nm, zero), d.mul(c, d.coerce(m[i])))
            if nc == zero:
                terms.pop(nm, None)
            else:
                terms[nm] = nc
        return _raw(self.arity, d, terms)

    def gradient(self):
        return [self.partial(i) for i in range(self.arity)]

    # --- domain changes / embeddings ---

    def reduce_mod(self, p):
        """Reduce a rational polynomial mod p (fails if p divides a denominator)."""
        if self.domain != QQ:
            raise DomainMismatch("reduce_mod expects a rational polynomial")
        gf = GF(p)
        return Polynomial(self.arity, gf, dict(self.terms))

    def embed(self, arity, slots):
        """Re-embed into a larger ring: variable i goes to slot slots[i]."""
        if len(slots) != self.arity:
            raise ArityMismatch("slot list length must equal arity")
        terms = {}
        for m, c in self.terms.items():
            nm = [0] * arity
            for i, e in enumerate(m):
                nm[slots[i]] += e
            terms[tuple(nm)] = c
        return Polynomial(arity, self.domain, terms)

    # --- comparisons, hashing, printing ---

    def __eq__(self, other):
        return (isinstance(other, Polynomial)
                and self.arity == other.arity
                and self.domain == other.domain
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.arity, self.domain,
                     frozenset(self.terms.items())))

    def _sorted_terms(self):
        # graded lexicographic: higher total degree first, then lex on exponents
        return sorted(self.terms.items(),
                      key=lambda mc: (-sum(mc[0]), tuple(-e for e in mc[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self._sorted_terms():
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(f"x{i}")
                elif e > 1:
                    factors.append(f"x{i}^{e}")
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == self.domain.one():
                parts.append(body)
            else:
                parts.append(f"{c}*{body}")
        out = parts[0]
        for part in parts[1:]:
            if part.startswith("-"):
                out += " - " + part[1:]
            else:
                out += " + " + part
        return out

    def __repr__(self):
        return f"Polynomial({self.domain}, {self})"


def _raw(arity, domain, terms):
    """Internal constructor: terms already canonical."""
    p = object.__new__(Polynomial)
    p.arity = arity
    p.domain = domain
    p.terms = terms
    return p


def euler_sum(f):
    """Sum_i x_i * df/dx_i; equals deg(f) * f for homogeneous f."""
    acc = Polynomial.zero(f.arity, f.domain)
    for i in range(f.arity):
        acc = acc + Polynomial.variable(i, f.arity, f.domain) * f.partial(i)
    return acc


# --- univariate helpers (used by resultants and gcd) ---

def _only_variable(f):
    used = f.variables_used()
    if len(used) > 1:
        raise NotUnivariate(f"polynomial uses variables {sorted(used)}")
    return used.pop() if used else None


def univariate_coeffs(f, i):
    """Coefficient list [c_0, ..., c_deg] of f viewed in variable i; entries
    are polynomials in the full ring (with variable i absent)."""
    deg = max((m[i] for m in f.terms), default=0)
    coeffs = [Polynomial.zero(f.arity, f.domain) for _ in range(deg + 1)]
    for m, c in f.terms.items():
        rest = tuple(0 if j == i else e for j, e in enumerate(m))
        coeffs[m[i]] = coeffs[m[i]] + Polynomial(f.arity, f.domain, {rest: c})
    return coeffs


def univariate_gcd(f, g):
    """Monic gcd of two effectively univariate rational polynomials.

    Binary homogeneous inputs are dehomogenized in their higher variable;
    gcd(f, 0) is monic(f) by convention.
    """
    if f.domain != QQ or g.domain != QQ:
        raise DomainMismatch("univariate_gcd works over the rationals")
    a = _dehomogenize_if_binary(f)
    b = _dehomogenize_if_binary(g)
    va = _only_variable(a)
    vb = _only_variable(b)
    if va is not None and vb is not None and va != vb:
        raise NotUnivariate("inputs use different variables")
    var = va if va is not None else vb

    def coeff_list(h):
        if var is None or h.is_zero():
            c = h.terms.get((0,) * h.arity)
            return [c] if c is not None else []
        out = [Fraction(0)] * (h.degree_in(var) + 1)
        for m, c in h.terms.items():
            out[m[var]] = c
        while out and out[-1] == 0:
            out.pop()
        return out

    ca, cb = coeff_list(a), coeff_list(b)

    def poly_mod(u, v):
        u = list(u)
        dv = len(v) - 1
        while len(u) - 1 >= dv and u:
            q = u[-1] / v[-1]
            for k in range(dv + 1):
                u[len(u) - 1 - dv + k] -= q * v[k]
            while u and u[-1] == 0:
                u.pop()
        return u

    while cb:
        ca, cb = cb, poly_mod(ca, cb)
    if not ca:
        return Polynomial.zero(f.arity, QQ)
    lead = ca[-1]
    ca = [c / lead for c in ca]
    if var is None:
        return Polynomial.constant(1, f.arity, QQ)
    terms = {}
    for e, c in enumerate(ca):
        if c != 0:
            mono = tuple(e if j == var else 0 for j in range(f.arity))
            terms[mono] = c
    return Polynomial(f.arity, QQ, terms)


def _dehomogenize_if_binary(f):
    used = sorted(f.variables_used())
    if len(used) == 2 and f.is_homogeneous():
        # set the higher variable to 1
        images = []
        for i in range(f.arity):
            if i == used[1]:
                images.append(Polynomial.constant(1, f.arity, f.domain))
            else:
                images.append(Polynomial.variable(i, f.arity, f.domain))
        return f.substitute(images)
    return f
