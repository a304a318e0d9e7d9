"""The degree-3 correspondence between a product of cube-augmented
hypersurfaces and the difference hypersurface.

Given smooth cubic forms f (n variables) and g (m variables), the sources
are f(x_1..x_n) + x_0^3 and g(y_1..y_m) + y_0^3 and the target is
f(z_1..z_n) - g(z_{n+1}..z_{n+m}).  The coordinate map sends
(x_0..x_n; y_0..y_m) to (x_1/x_0, ..., x_n/x_0, y_1/y_0, ..., y_m/y_0);
its fibers over GF(p) are governed by the cube map on GF(p)*.
"""

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadPrime,
    ExhaustedSearch,
    PreconditionViolated,
    SingularInput,
)
from .forms import form_smoothness
from .poly import QQ, Polynomial


@dataclass(frozen=True)
class SKMapSpec:
    f: object            # CubicForm in n variables
    g: object            # CubicForm in m variables
    degree: int          # fixed at 3
    source_eq_f: Polynomial   # f(x_1..x_n) + x_0^3, arity n+1
    source_eq_g: Polynomial   # g(y_1..y_m) + y_0^3, arity m+1
    target: Polynomial        # f(z_1..z_n) - g(z_{n+1}..z_{n+m}), arity n+m

    @property
    def n(self):
        return self.f.nvars

    @property
    def m(self):
        return self.g.nvars


def build_sk_map(f, g):
    """Construct the correspondence data; inputs must be smooth."""
    for name, form in (("f", f), ("g", g)):
        verdict = form_smoothness(form)
        if not verdict.smooth:
            raise SingularInput(f"{name} is singular: {verdict.witness}")
    n, m = f.nvars, g.nvars
    cube0_f = Polynomial.variable(0, n + 1, QQ) ** 3
    source_f = f.poly.embed(n + 1, list(range(1, n + 1))) + cube0_f
    cube0_g = Polynomial.variable(0, m + 1, QQ) ** 3
    source_g = g.poly.embed(m + 1, list(range(1, m + 1))) + cube0_g
    target = (f.poly.embed(n + m, list(range(n)))
              - g.poly.embed(n + m, list(range(n, n + m))))
    return SKMapSpec(f=f, g=g, degree=3, source_eq_f=source_f,
                     source_eq_g=source_g, target=target)


def verify_sk_identity(spec):
    """Exact check that the coordinate map lands in the target hypersurface.

    Works in the combined ring of all source variables
    (x_0..x_n, y_0..y_m): the denominator-cleared pullback of the target
    must coincide with y_0^3*f(x) - x_0^3*g(y), which in turn equals
    y_0^3*(f(x)+x_0^3) - x_0^3*(g(y)+y_0^3) by formal cancellation.
    Returns the expansions for audit.
    """
    n, m = spec.n, spec.m
    arity = (n + 1) + (m + 1)  # x_0..x_n then y_0..y_m
    x0 = Polynomial.variable(0, arity, QQ)
    y0 = Polynomial.variable(n + 1, arity, QQ)
    f_x = spec.f.poly.embed(arity, list(range(1, n + 1)))
    g_y = spec.g.poly.embed(arity, list(range(n + 2, n + m + 2)))
    lhs = y0 ** 3 * f_x - x0 ** 3 * g_y
    src_f = spec.source_eq_f.embed(arity, list(range(0, n + 1)))
    src_g = spec.source_eq_g.embed(arity, list(range(n + 1, n + m + 2)))
    rhs = y0 ** 3 * src_f - x0 ** 3 * src_g
    # denominator-cleared pullback: z_i -> x_i*y_0 (i <= n), z_{n+j} -> y_j*x_0
    images = []
    for i in range(1, n + 1):
        images.append(Polynomial.variable(i, arity, QQ) * y0)
    for j in range(1, m + 1):
        images.append(Polynomial.variable(n + 1 + j, arity, QQ) * x0)
    pullback = spec.target.substitute(images)
    holds = (lhs == rhs) and (lhs == pullback)
    return {"holds": holds, "lhs": lhs, "rhs": rhs, "pullback": pullback}


def _check_prime(spec, p):
    if p < 5:
        raise BadPrime(f"prime {p} is below 5")
    for c in list(spec.f.poly.terms.values()) + list(spec.g.poly.terms.values()):
        if c.denominator % p == 0:
            raise BadPrime(f"{p} divides a coefficient denominator")


def sample_target_point(spec, p, seed=0, max_attempts=None):
    """Seeded random point z of the target hypersurface over GF(p) with
    f(z_1..z_n) != 0, as a canonical projective representative."""
    _check_prime(spec, p)
    rng = random.Random(seed)
    return _sample(spec, p, rng, max_attempts)


def _sample(spec, p, rng, max_attempts=None):
    n, m = spec.n, spec.m
    target = spec.target.reduce_mod(p)
    f_part = spec.f.poly.reduce_mod(p)
    attempts = max_attempts or max(1000, 60 * p)
    for _ in range(attempts):
        z = [rng.randrange(p) for _ in range(n + m)]
        if not any(z):
            continue
        if target.evaluate(z) != 0:
            continue
        if f_part.evaluate(z[:n]) == 0:
            continue
        pivot = next(i for i, v in enumerate(z) if v)
        inv = pow(z[pivot], -1, p)
        return tuple(v * inv % p for v in z)
    raise ExhaustedSearch(
        f"no target point found over GF({p}) after {attempts} attempts")


def fiber_count(spec, p, z):
    """Number of GF(p)-points of the fiber over z.

    A preimage forces x = x_0*(1, l*z_1..l*z_n) and
    y = y_0*(1, l*z_{n+1}..), and both source equations reduce to
    l^3 * f(z) = -1; the count is the number of such l in GF(p)*.
    """
    _check_prime(spec, p)
    n = spec.n
    target = spec.target.reduce_mod(p)
    f_part = spec.f.poly.reduce_mod(p)
    if target.evaluate(z) != 0:
        raise PreconditionViolated("z does not lie on the target hypersurface")
    fz = f_part.evaluate(list(z[:n]))
    if fz == 0:
        raise PreconditionViolated("f vanishes at z")
    return sum(1 for lam in range(1, p)
               if pow(lam, 3, p) * fz % p == (p - 1))


@dataclass(frozen=True)
class FiberReport:
    prime: int
    samples: int
    histogram: dict  # fiber size -> count
    mean: Fraction

    def to_json(self):
        return {
            "prime": self.prime,
            "samples": self.samples,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "mean": f"{self.mean.numerator}/{self.mean.denominator}",
        }


def fiber_statistics(spec, p, n_samples, seed=0):
    """Histogram of fiber sizes over independently sampled target points."""
    if n_samples < 1:
        raise PreconditionViolated("n_samples must be at least 1")
    _check_prime(spec, p)
    rng = random.Random(seed)
    histogram = Counter()
    total = 0
    for _ in range(n_samples):
        z = _sample(spec, p, rng)
        size = fiber_count(spec, p, z)
        histogram[size] += 1
        total += size
    return FiberReport(prime=p, samples=n_samples,
                       histogram=dict(histogram),
                       mean=Fraction(total, n_samples))


def brute_force_fiber_count(spec, p, z):
    """Oracle for tiny instances: push every pair of projective source
    points through the coordinate map and count hits on z."""
    from .gfplin import normalize_projective, projective_points

    n, m = spec.n, spec.m
    src_f = spec.source_eq_f.reduce_mod(p)
    src_g = spec.source_eq_g.reduce_mod(p)
    zc = normalize_projective(z, p)
    count = 0
    for x in projective_points(p, n + 1):
        if src_f.evaluate(x) != 0 or x[0] == 0:
            continue
        x0inv = pow(x[0], -1, p)
        for y in projective_points(p, m + 1):
            if src_g.evaluate(y) != 0 or y[0] == 0:
                continue
            y0inv = pow(y[0], -1, p)
            image = ([v * x0inv % p for v in x[1:]]
                     + [v * y0inv % p for v in y[1:]])
            if normalize_projective(image, p) == zc:
                count += 1
    return count
