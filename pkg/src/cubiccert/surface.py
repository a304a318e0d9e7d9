"""Lines on the cubic surface f(x0,x1,x2) - t^3 = 0 over GF(p).

Every line is parametrized by linear forms (a(u,t), b(u,t), c(u,t), t)
with a = a1*u + a0*t etc., canonicalized so the first nonzero direction
entry is 1 and the offset vanishes at that pivot.  The exhaustive search
itself is the counting oracle: directions run over the plane cubic curve
f = 0 (the t = 0 section), offsets over the pivot-normalized affine plane.

For a cubic form F and vectors D, O the polarization identity
    F(D*u + O*t) = F(D)*u^3 + (O . grad F(D))*u^2*t
                   + (D . grad F(O))*u*t^2 + F(O)*t^3
turns each membership test into four evaluations.
"""

from dataclasses import dataclass

from .errors import BadPrime, NotAllLinesRational, UnexpectedGrouping
from .gfplin import (
    det_mod_p,
    kernel_vector_mod_p,
    normalize_projective,
    projective_points,
    rank_mod_p,
)
from .poly import is_prime


@dataclass(frozen=True, order=True)
class LineOnSurface:
    p: int
    direction: tuple  # (a1, b1, c1), first nonzero entry 1
    offset: tuple     # (a0, b0, c0), zero at the direction's pivot

    def point_at(self, u, t):
        """Point (a(u,t), b(u,t), c(u,t), t) of P^3."""
        return tuple((d * u + o * t) % self.p
                     for d, o in zip(self.direction, self.offset)) + (t % self.p,)

    def spanning_vectors(self):
        """Two points of P^3 spanning the line."""
        return (self.direction + (0,), self.offset + (1,))

    def to_json(self):
        return {"direction": list(self.direction), "offset": list(self.offset)}


def canonicalize_line(p, direction, offset):
    """Normalize the parametrization: pivot direction entry 1, offset 0 there."""
    direction = normalize_projective(direction, p)
    if direction is None:
        raise ValueError("zero direction")
    pivot = next(i for i, v in enumerate(direction) if v)
    shift = offset[pivot] % p
    # reparametrize u -> u - shift*t to clear the offset pivot entry
    offset = tuple((o - shift * d) % p for o, d in zip(offset, direction))
    return LineOnSurface(p=p, direction=direction, offset=offset)


def _cubic_data_mod_p(f, p):
    fp = f.poly.reduce_mod(p)
    grad = fp.gradient()

    def value(v):
        return fp.evaluate(v)

    def polar(v, w):
        # w . grad f(v)
        return sum(wi * g.evaluate(v) for wi, g in zip(w, grad)) % p

    return value, polar


def find_lines(f, p):
    """All 27 canonical lines of f - t^3 = 0 over GF(p), or an error.

    Requires p = 1 mod 3 (so cube roots of unity exist) and good reduction.
    Every returned line is re-verified against the membership identity; a
    count below 27 raises with a suggested next admissible prime.
    """
    if not is_prime(p) or p % 3 != 1:
        raise BadPrime(f"{p} is not a prime congruent to 1 mod 3")
    if f.nvars != 3:
        raise BadPrime("the surface construction needs a ternary form")
    try:
        value, polar = _cubic_data_mod_p(f, p)
    except ZeroDivisionError:
        raise BadPrime(f"{p} divides a coefficient denominator")

    lines = []
    for direction in projective_points(p, 3):
        if value(direction) != 0:
            continue  # u^3 coefficient must vanish: direction lies on f = 0
        pivot = next(i for i, v in enumerate(direction) if v)
        free = [i for i in range(3) if i != pivot]
        for s in range(p):
            for r in range(p):
                offset = [0, 0, 0]
                offset[free[0]] = s
                offset[free[1]] = r
                offset = tuple(offset)
                # membership: f(D*u + O*t) = t^3
                if polar(direction, offset) != 0:
                    continue
                if polar(offset, direction) != 0:
                    continue
                if value(offset) != 1:
                    continue
                line = LineOnSurface(p=p, direction=direction, offset=offset)
                assert _on_surface(line, value, polar)
                lines.append(line)
    lines.sort()
    if len(lines) > 27:
        raise UnexpectedGrouping(
            f"found {len(lines)} > 27 lines; the search or the smoothness "
            "hypothesis is broken")
    if len(lines) < 27:
        nxt = p + 1
        while not (is_prime(nxt) and nxt % 3 == 1):
            nxt += 1
        raise NotAllLinesRational(
            f"only {len(lines)} of the 27 lines are rational over GF({p}); "
            f"try prime {nxt}", count=len(lines), next_prime=nxt)
    return lines


def _on_surface(line, value, polar):
    d, o = line.direction, line.offset
    return (value(d) == 0 and polar(d, o) == 0
            and polar(o, d) == 0 and value(o) == 1)


@dataclass(frozen=True)
class EckardtGroup:
    base_point: tuple  # (a1, b1, c1, 0) in P^3
    lines: tuple       # exactly 3 lines sharing that direction

    def to_json(self):
        return {"base_point": list(self.base_point),
                "lines": [l.to_json() for l in self.lines]}


def group_by_eckardt(lines):
    """Partition the 27 lines into 9 coplanar triples by direction class.

    The common direction, taken at t = 0, is a point of the plane cubic
    section; each triple must be coplanar (the span of direction and the
    three offsets-with-t has rank 3).
    """
    if not lines:
        raise UnexpectedGrouping("no lines to group")
    p = lines[0].p
    by_direction = {}
    for line in lines:
        by_direction.setdefault(line.direction, []).append(line)
    groups = []
    for direction in sorted(by_direction):
        members = sorted(by_direction[direction])
        if len(members) != 3:
            raise UnexpectedGrouping(
                f"direction {direction} carries {len(members)} lines, "
                "expected 3")
        rows = [direction + (0,)] + [l.offset + (1,) for l in members]
        if rank_mod_p(rows, p) > 3:
            raise UnexpectedGrouping(
                f"triple at direction {direction} is not coplanar")
        groups.append(EckardtGroup(base_point=direction + (0,),
                                   lines=tuple(members)))
    if len(groups) != 9:
        raise UnexpectedGrouping(f"{len(groups)} direction classes, expected 9")
    return groups


@dataclass(frozen=True)
class Meeting:
    meets: bool
    point: tuple = None       # projective point of P^3 when meets
    same_line: bool = False

    @property
    def disjoint(self):
        return not self.meets


def lines_meet(l1, l2):
    """Disjointness test via the 4x4 determinant of the spanning vectors."""
    if l1.p != l2.p:
        raise BadPrime("lines live over different primes")
    p = l1.p
    rows = list(l1.spanning_vectors()) + list(l2.spanning_vectors())
    if det_mod_p(rows, p) != 0:
        return Meeting(meets=False)
    if rank_mod_p(rows, p) == 2:
        return Meeting(meets=True, point=None, same_line=True)
    # columns of the transpose are the four spanning vectors; a kernel
    # vector of the transpose gives the linear combination meeting point
    cols = [[rows[r][c] for r in range(4)] for c in range(4)]
    combo = kernel_vector_mod_p(cols, p)
    point = [(combo[0] * rows[0][i] + combo[1] * rows[1][i]) % p
             for i in range(4)]
    pt = normalize_projective(point, p)
    if pt is None:
        # combination degenerate on the first line; use the second
        point = [(-combo[2] * rows[2][i] - combo[3] * rows[3][i]) % p
                 for i in range(4)]
        pt = normalize_projective(point, p)
    return Meeting(meets=True, point=pt)
