"""Planes inside the fourfold f(x0,x1,x2) - g(x3,x4,x5) = 0 in P^5, the
disjoint-plane rationality witness, and the disjoint linear spaces of
hypersurfaces built from binary blocks.

A line (a(u,t), b(u,t), c(u,t), t) on f - t^3 = 0 and a line
(d(v,t), e(v,t), h(v,t), t) on g - t^3 = 0 sweep out the plane
(a(u,t), b(u,t), c(u,t), d(v,t), e(v,t), h(v,t)) in P^5, encoded as the
6x3 matrix of the (u, v, t) basis images.  Two such planes are disjoint
iff the concatenated 6x6 matrix is nonsingular.
"""

from dataclasses import dataclass

from .errors import (
    BadPrime,
    BlockNotSplit,
    NoWitnessFound,
    RankDeficient,
    RepeatedFactor,
)
from .gfplin import det_mod_p, rank_mod_p
from .surface import lines_meet


@dataclass(frozen=True)
class PlaneInP5:
    p: int
    matrix: tuple  # 6 rows x 3 columns (u, v, t) over GF(p)

    def to_json(self):
        return {"matrix": [list(row) for row in self.matrix]}


def build_plane(l, m, f, g):
    """Plane swept by a line of the f-surface and a line of the g-surface.

    Verifies rank 3 and replays the containment identity
    f(rows 1-3) - g(rows 4-6) = t^3 - t^3 = 0 symbolically over GF(p).
    """
    if l.p != m.p:
        raise BadPrime("lines live over different primes")
    p = l.p
    rows = []
    for d, o in zip(l.direction, l.offset):
        rows.append((d, 0, o))
    for d, o in zip(m.direction, m.offset):
        rows.append((0, d, o))
    matrix = tuple(rows)
    if rank_mod_p([list(r) for r in matrix], p) != 3:
        raise RankDeficient("plane matrix does not have rank 3")
    if not _containment_holds(matrix, f, g, p):
        raise RankDeficient("containment identity failed for a plane")
    return PlaneInP5(p=p, matrix=matrix)


def _containment_holds(matrix, f, g, p):
    """f(first three rows) - g(last three rows) = 0 identically in (u,v,t)."""
    from .poly import GF, Polynomial

    gf = GF(p)
    images_f = [Polynomial(3, gf, {(1, 0, 0): row[0], (0, 1, 0): row[1],
                                   (0, 0, 1): row[2]})
                for row in matrix[:3]]
    images_g = [Polynomial(3, gf, {(1, 0, 0): row[0], (0, 1, 0): row[1],
                                   (0, 0, 1): row[2]})
                for row in matrix[3:]]
    fp = f.poly.reduce_mod(p)
    gp = g.poly.reduce_mod(p)
    diff = fp.substitute(images_f) - gp.substitute(images_g)
    return diff.is_zero()


def planes_disjoint(a, b):
    """Two planes of P^5 are disjoint iff their linear hulls only meet in 0."""
    if a.p != b.p:
        raise BadPrime("planes live over different primes")
    rows = [list(ra) + list(rb) for ra, rb in zip(a.matrix, b.matrix)]
    det = det_mod_p(rows, a.p)
    return {"disjoint": det != 0, "det": det}


@dataclass(frozen=True)
class DisjointWitness:
    l: object
    m: object
    l1: object
    m1: object
    plane1: PlaneInP5
    plane2: PlaneInP5
    det6: int
    conditions_log: dict

    def to_json(self):
        return {
            "prime": self.l.p,
            "l": self.l.to_json(),
            "m": self.m.to_json(),
            "l1": self.l1.to_json(),
            "m1": self.m1.to_json(),
            "plane1": self.plane1.to_json(),
            "plane2": self.plane2.to_json(),
            "det6": self.det6,
            "conditions": self.conditions_log,
        }


def candidate_pairs(lines_s, lines_t, l=None, m=None):
    """All (l1, m1) with l1 disjoint from l and m1 meeting m off t = 0."""
    l = l or lines_s[0]
    m = m or lines_t[0]
    l1s = [c for c in lines_s if lines_meet(c, l).disjoint]
    m1s = []
    for c in lines_t:
        meeting = lines_meet(c, m)
        if meeting.meets and not meeting.same_line \
                and meeting.point[3] != 0:
            m1s.append(c)
    return l, m, [(l1, m1) for l1 in l1s for m1 in m1s]


def find_disjoint_witness(lines_s, lines_t, f, g):
    """First witness pair under the canonical sort order.

    Fixes (l, m) as the first canonical lines, scans (l1, m1) meeting the
    hypotheses (l1 disjoint from l; m1 meets m at a point with t != 0) and
    returns the first pair whose planes are disjoint.  Failure is a red
    alert: it would contradict the verified claim at this prime.
    """
    l, m, pairs = candidate_pairs(lines_s, lines_t)
    plane_lm = build_plane(l, m, f, g)
    for l1, m1 in pairs:
        plane_l1m1 = build_plane(l1, m1, f, g)
        result = planes_disjoint(plane_lm, plane_l1m1)
        if result["disjoint"]:
            meeting = lines_meet(m1, m)
            return DisjointWitness(
                l=l, m=m, l1=l1, m1=m1,
                plane1=plane_lm, plane2=plane_l1m1,
                det6=result["det"],
                conditions_log={
                    "l1_meets_l": False,
                    "m1_meets_m_at": list(meeting.point),
                })
    raise NoWitnessFound(
        "no hypothesis-satisfying pair yielded disjoint planes; this "
        "contradicts the disjoint-plane claim at this prime")


def scan_all_pairs(lines_s, lines_t, f, g):
    """Exhaustive property check: every hypothesis-satisfying pair gives
    disjoint planes.  Returns (pairs_checked, failures)."""
    l, m, pairs = candidate_pairs(lines_s, lines_t)
    plane_lm = build_plane(l, m, f, g)
    failures = []
    for l1, m1 in pairs:
        plane_l1m1 = build_plane(l1, m1, f, g)
        if not planes_disjoint(plane_lm, plane_l1m1)["disjoint"]:
            failures.append((l1, m1))
    return len(pairs), failures


# ---------------------------------------------------------------------------
# disjoint linear spaces for type (2,...,2)
# ---------------------------------------------------------------------------

def _binary_cubic_roots(block, p):
    """Projective roots of a binary cubic over GF(p), as points of P^1."""
    fp = block.poly.reduce_mod(p)
    roots = []
    for u in range(p):
        if fp.evaluate([u, 1]) == 0:
            roots.append((u, 1))
    if fp.evaluate([1, 0]) == 0:
        roots.append((1, 0))
    return roots


def disjoint_linear_spaces_2type(blocks, p):
    """Two disjoint P^{n-1}s inside sum_i f_i(u_i, v_i) = 0 over GF(p).

    Each binary cubic must split into three distinct linear factors mod p;
    picking two distinct factors per block cuts out the linear spaces
    L = {l_i = 0} and L' = {l'_i = 0}.  Returns the 2n x 2n matrix of the
    combined linear forms (full rank certifies empty intersection), the
    chosen factors, and symbolic containment checks.
    """
    n = len(blocks)
    if n < 2:
        raise BadPrime("need at least two binary blocks")
    factors = []
    for i, block in enumerate(blocks):
        if block.nvars != 2:
            raise BadPrime(f"block {i} is not binary")
        from .forms import binary_cubic_discriminant

        disc = binary_cubic_discriminant(block)
        if disc == 0 or disc.numerator % p == 0:
            raise RepeatedFactor(f"block {i} has a repeated factor mod {p}")
        roots = _binary_cubic_roots(block, p)
        if len(roots) != 3:
            raise BlockNotSplit(
                f"block {i} does not split into 3 linear factors mod {p}")
        # root (u0, v0) corresponds to the linear form v0*u - u0*v
        factors.append([(v0, (-u0) % p) for (u0, v0) in roots])

    def space_matrix(choice):
        # rows: one linear form per block, in the 2n ambient coordinates
        rows = []
        for i in range(n):
            row = [0] * (2 * n)
            a, b = factors[i][choice[i]]
            row[2 * i] = a
            row[2 * i + 1] = b
            rows.append(row)
        return rows

    l_rows = space_matrix([0] * n)
    lp_rows = space_matrix([1] * n)
    combined = l_rows + lp_rows
    rank = rank_mod_p(combined, p)
    contained = (_space_in_hypersurface(blocks, factors, [0] * n, p)
                 and _space_in_hypersurface(blocks, factors, [1] * n, p))
    return {
        "prime": p,
        "n": n,
        "factors": factors,
        "space1": l_rows,
        "space2": lp_rows,
        "rank": rank,
        "full_rank": rank == 2 * n,
        "contained": contained,
    }


def _space_in_hypersurface(blocks, factors, choice, p):
    """Replay sum_i f_i = 0 on the parametrized linear space symbolically."""
    from .poly import GF, Polynomial

    gf = GF(p)
    n = len(blocks)
    total = Polynomial.zero(n, gf)
    for i, block in enumerate(blocks):
        a, b = factors[i][choice[i]]
        # kernel direction of a*u + b*v: (u, v) = s_i * (b, -a)
        mono = tuple(1 if j == i else 0 for j in range(n))
        u_img = Polynomial(n, gf, {mono: b})
        v_img = Polynomial(n, gf, {mono: (-a) % p})
        total = total + block.poly.reduce_mod(p).substitute([u_img, v_img])
    return total.is_zero()
