"""Sylvester and Macaulay resultants for the smoothness decisions.

The Macaulay resultant here is specialized to three ternary quadrics
(critical degree 4, 15x15 numerator matrix divided by a 3x3 minor), which
is exactly what the Jacobian criterion for a ternary cubic needs.
"""

import random
from dataclasses import dataclass, field

from .errors import (
    DivisionDegenerate,
    NotQuadric,
    NotTernary,
    ZeroInput,
)
from .poly import QQ, Polynomial, univariate_coeffs


def _poly_matrix_det(rows):
    """Determinant by Laplace expansion; entries are Polynomials."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    arity = rows[0][0].arity
    domain = rows[0][0].domain
    acc = Polynomial.zero(arity, domain)
    sign = 1
    for j in range(n):
        entry = rows[0][j]
        if not entry.is_zero():
            minor = [[rows[i][k] for k in range(n) if k != j]
                     for i in range(1, n)]
            sub = _poly_matrix_det(minor) * entry
            acc = acc + sub if sign > 0 else acc - sub
        sign = -sign
    return acc


def sylvester_resultant(f, g, elim):
    """Resultant of f and g viewed as univariate in variable `elim`.

    Vanishes identically iff f and g share a factor of positive degree in
    `elim` over the fraction field of the remaining variables.
    """
    if f.is_zero() or g.is_zero():
        raise ZeroInput("sylvester_resultant requires nonzero inputs")
    fc = univariate_coeffs(f, elim)
    gc = univariate_coeffs(g, elim)
    m, n = len(fc) - 1, len(gc) - 1
    if m == 0 and n == 0:
        return Polynomial.constant(1, f.arity, f.domain)
    zero = Polynomial.zero(f.arity, f.domain)
    size = m + n
    rows = []
    for i in range(n):  # n rows of f coefficients (descending)
        row = [zero] * size
        for k, c in enumerate(reversed(fc)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):  # m rows of g coefficients
        row = [zero] * size
        for k, c in enumerate(reversed(gc)):
            row[i + k] = c
        rows.append(row)
    return _poly_matrix_det(rows)


def _scalar_det(rows, domain):
    """Gaussian-elimination determinant over a field."""
    n = len(rows)
    a = [list(r) for r in rows]
    det = domain.one()
    zero = domain.zero()
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if a[r][col] != zero:
                pivot = r
                break
        if pivot is None:
            return zero
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = domain.neg(det)
        det = domain.mul(det, a[col][col])
        inv = domain.inv(a[col][col])
        for r in range(col + 1, n):
            if a[r][col] != zero:
                factor = domain.mul(a[r][col], inv)
                a[r] = [domain.sub(x, domain.mul(factor, y))
                        for x, y in zip(a[r], a[col])]
    return det


def _degree4_monomials():
    out = []
    for a in range(4, -1, -1):
        for b in range(4 - a, -1, -1):
            out.append((a, b, 4 - a - b))
    return out


@dataclass
class MacaulayResult:
    """Exact resultant value plus the recorded changes of variables."""

    value: object
    provenance: list = field(default_factory=list)

    def is_zero(self):
        domain_zero = 0
        return self.value == domain_zero


def _random_unimodular(rng):
    """Small random 3x3 integer matrix of determinant +-1 built from
    elementary row operations."""
    m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(6):
        i, j = rng.sample(range(3), 2)
        c = rng.choice([-2, -1, 1, 2])
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    return m


def _apply_linear_change(q, m):
    """Substitute x_i -> sum_j m[j][i] * x_j."""
    images = []
    for i in range(3):
        terms = {}
        for j in range(3):
            if m[j][i]:
                mono = tuple(1 if k == j else 0 for k in range(3))
                terms[mono] = m[j][i]
        images.append(Polynomial(3, q.domain, terms))
    return q.substitute(images)


def _macaulay_once(q1, q2, q3, domain):
    monos = _degree4_monomials()
    index = {m: k for k, m in enumerate(monos)}
    quadrics = [q1, q2, q3]
    zero = domain.zero()
    rows = []
    assigned = []
    for m in monos:
        i = next(k for k in range(3) if m[k] >= 2)
        assigned.append(i)
        shift = tuple(e - (2 if k == i else 0) for k, e in enumerate(m))
        row = [zero] * len(monos)
        for qm, qc in quadrics[i].terms.items():
            col = tuple(a + b for a, b in zip(qm, shift))
            row[index[col]] = domain.add(row[index[col]], qc)
        rows.append(row)
    big = _scalar_det(rows, domain)
    # minor: monomials non-reduced in at least two variables
    sel = [k for k, m in enumerate(monos)
           if sum(1 for e in m if e >= 2) >= 2]
    minor_rows = [[rows[r][c] for c in sel] for r in sel]
    small = _scalar_det(minor_rows, domain)
    return big, small


def _linearly_dependent(quadrics, domain):
    """Rank < 3 of the coefficient vectors in the 6-dim space of quadrics."""
    monos = sorted({m for q in quadrics for m in q.terms})
    zero = domain.zero()
    rows = [[q.terms.get(m, zero) for m in monos] for q in quadrics]
    rank = 0
    for col in range(len(monos)):
        pivot = next((r for r in range(rank, 3) if rows[r][col] != zero), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = domain.inv(rows[rank][col])
        rows[rank] = [domain.mul(x, inv) for x in rows[rank]]
        for r in range(3):
            if r != rank and rows[r][col] != zero:
                f = rows[r][col]
                rows[r] = [domain.sub(x, domain.mul(f, y))
                           for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == 3:
            break
    return rank < 3


def macaulay_resultant_q3(q1, q2, q3, seed=0, max_retries=8):
    """Macaulay resultant of three ternary quadrics.

    Zero iff the quadrics share a projective zero over the algebraic
    closure.  When the denominator minor degenerates, retries with seeded
    unimodular changes of variables (which leave the value unchanged, the
    scaling factor being det(A)^12 = 1); every change is recorded in the
    returned provenance.
    """
    for k, q in enumerate((q1, q2, q3), start=1):
        if q.arity != 3:
            raise NotTernary(f"q{k} has arity {q.arity}, expected 3")
        if q.is_zero() or not q.is_homogeneous(2):
            raise NotQuadric(f"q{k} is not a nonzero quadratic form")
    domain = q1.domain
    # Linearly dependent quadrics cut out the zero set of at most two
    # conics, which always meet in P^2 over the algebraic closure, so the
    # resultant is exactly zero.  (This also covers the configurations
    # where the denominator minor vanishes for every change of variables,
    # e.g. proportional quadrics.)
    if _linearly_dependent((q1, q2, q3), domain):
        return MacaulayResult(value=domain.zero(), provenance=[])
    rng = random.Random(seed)
    provenance = []
    a, b, c = q1, q2, q3
    for attempt in range(max_retries + 1):
        big, small = _macaulay_once(a, b, c, domain)
        if small != domain.zero():
            value = domain.mul(big, domain.inv(small)) if big != domain.zero() \
                else domain.zero()
            return MacaulayResult(value=value, provenance=provenance)
        change = _random_unimodular(rng)
        provenance.append(change)
        a = _apply_linear_change(q1, change)
        b = _apply_linear_change(q2, change)
        c = _apply_linear_change(q3, change)
    raise DivisionDegenerate(
        f"denominator minor vanished after {max_retries} changes of variables")


def macaulay_resultant_is_zero(q1, q2, q3, seed=0):
    res = macaulay_resultant_q3(q1, q2, q3, seed=seed)
    return res.value == q1.domain.zero()
