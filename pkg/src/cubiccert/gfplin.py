"""Small dense linear algebra over GF(p), plus projective-space enumeration.

Matrices are lists of row lists of ints; everything is reduced mod p.
"""

from functools import lru_cache


def rank_mod_p(rows, p):
    a = [[x % p for x in row] for row in rows]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    rank = 0
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if a[r][col]), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        inv = pow(a[row][col], -1, p)
        a[row] = [(x * inv) % p for x in a[row]]
        for r in range(nrows):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[row])]
        row += 1
        rank += 1
        if row == nrows:
            break
    return rank


def det_mod_p(rows, p):
    n = len(rows)
    a = [[x % p for x in row] for row in rows]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det % p
        det = det * a[col][col] % p
        inv = pow(a[col][col], -1, p)
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv % p
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
    return det % p


def kernel_vector_mod_p(rows, p):
    """A nonzero kernel vector of the matrix (rows x cols), or None."""
    if not rows:
        return None
    nrows, ncols = len(rows), len(rows[0])
    a = [[x % p for x in row] for row in rows]
    pivots = {}
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, nrows) if a[r][col]), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        inv = pow(a[row][col], -1, p)
        a[row] = [(x * inv) % p for x in a[row]]
        for r in range(nrows):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[row])]
        pivots[col] = row
        row += 1
        if row == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    fc = free[0]
    v = [0] * ncols
    v[fc] = 1
    for col, r in pivots.items():
        v[col] = (-a[r][fc]) % p
    return v


def iter_projective_points(p, n):
    """Lazily yield canonical representatives of P^{n-1}(GF(p)).

    Same order as projective_points but without materializing the p^(n-1)
    sized tuple; use this for large ambient dimensions.
    """
    for pivot in range(n):
        tail = n - pivot - 1
        base = [0] * pivot + [1]
        idx = [0] * tail
        while True:
            yield tuple(base + idx)
            k = tail - 1
            while k >= 0:
                idx[k] += 1
                if idx[k] < p:
                    break
                idx[k] = 0
                k -= 1
            if k < 0:
                break


@lru_cache(maxsize=None)
def projective_points(p, n):
    """Canonical representatives of P^{n-1}(GF(p)): first nonzero coord is 1."""
    points = []
    for pivot in range(n):
        tail = n - pivot - 1
        base = [0] * pivot + [1]
        idx = [0] * tail
        while True:
            points.append(tuple(base + idx))
            k = tail - 1
            while k >= 0:
                idx[k] += 1
                if idx[k] < p:
                    break
                idx[k] = 0
                k -= 1
            if k < 0:
                break
            if tail == 0:
                break
    return tuple(points)


def normalize_projective(vec, p):
    """Scale so the first nonzero coordinate is 1; None for the zero vector."""
    v = [x % p for x in vec]
    pivot = next((i for i, x in enumerate(v) if x), None)
    if pivot is None:
        return None
    inv = pow(v[pivot], -1, p)
    return tuple(x * inv % p for x in v)


@lru_cache(maxsize=None)
def cube_roots_of_unity(p):
    return tuple(x for x in range(1, p) if pow(x, 3, p) == 1)


def cube_roots(a, p):
    """All x in GF(p) with x^3 = a."""
    return [x for x in range(p) if pow(x, 3, p) == a % p]
