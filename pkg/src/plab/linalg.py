"""Dense linear algebra over the scalar tower.

Matrices are lists of lists of scalars, vectors are lists.  Exact modes use
exact zero tests; float mode uses a relative pivot threshold
(:data:`FLOAT_PIVOT_RTOL` of the largest entry magnitude).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DimensionMismatch
from .scalars import MODE_FLOAT, infer_mode

FLOAT_PIVOT_RTOL = 1e-9


def mat_mode(m) -> str:
    return infer_mode([x for row in m for x in row])


def shape(m):
    return len(m), len(m[0]) if m else 0


def identity(n, one=Fraction(1)):
    return [[one if i == j else one * 0 for j in range(n)] for i in range(n)]


def zeros_vec(n, zero=Fraction(0)):
    return [zero for _ in range(n)]


def mat_vec(m, v):
    if len(m[0]) != len(v):
        raise DimensionMismatch(f"{shape(m)} @ {len(v)}")
    return [sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m))]


def mat_mul(a, b):
    if len(a[0]) != len(b):
        raise DimensionMismatch(f"{shape(a)} @ {shape(b)}")
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, s):
    return [[x * s for x in row] for row in a]


def transpose(m):
    return [list(row) for row in zip(*m)]


def dot(u, v):
    if len(u) != len(v):
        raise DimensionMismatch(f"{len(u)} . {len(v)}")
    return sum(x * y for x, y in zip(u, v))


def vec_add(u, v):
    return [x + y for x, y in zip(u, v)]


def vec_sub(u, v):
    return [x - y for x, y in zip(u, v)]


def vec_scale(u, s):
    return [x * s for x in u]


def _pivot_tol(m, mode):
    if mode != MODE_FLOAT:
        return None
    biggest = max((abs(x) for row in m for x in row), default=0.0)
    return FLOAT_PIVOT_RTOL * biggest if biggest else 0.0


def rref(m, mode=None):
    """Reduced row echelon form; returns (rref_rows, pivot_columns).

    Exact modes pick the first nonzero pivot (deterministic); float mode
    picks the largest-magnitude pivot above the relative threshold.
    """
    if not m:
        return [], []
    mode = mode or mat_mode(m)
    tol = _pivot_tol(m, mode)
    rows = [list(r) for r in m]
    nr, nc = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        if tol is None:
            pr = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        else:
            pr = max(range(r, nr), key=lambda i: abs(rows[i][c]))
            if abs(rows[pr][c]) <= tol:
                pr = None
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(m, mode=None) -> int:
    return len(rref(m, mode)[1])


def nullspace(m, mode=None):
    """Basis of the kernel, one vector per free column (deterministic)."""
    if not m:
        return []
    red, pivots = rref(m, mode)
    nc = len(m[0])
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * nc if mat_mode(m) != MODE_FLOAT else [0.0] * nc
        v[fc] = v[fc] + 1
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def column_space_basis(m, mode=None):
    """Basis of the column space: rref the transpose, keep nonzero rows."""
    red, pivots = rref(transpose(m), mode)
    return [red[i] for i in range(len(pivots))]


def solve(a, b, mode=None):
    """One solution of a x = b, or None when inconsistent."""
    mode = mode or mat_mode(a)
    aug = [list(ra) + [bb] for ra, bb in zip(a, b)]
    red, pivots = rref(aug, mode)
    nc = len(a[0])
    if nc in pivots:
        return None  # pivot in the rhs column: inconsistent
    x = [Fraction(0)] * nc if mode != MODE_FLOAT else [0.0] * nc
    for r, pc in enumerate(pivots):
        x[pc] = red[r][nc]
    return x


def inverse(m, mode=None):
    mode = mode or mat_mode(m)
    n = len(m)
    one = 1.0 if mode == MODE_FLOAT else Fraction(1)
    aug = [list(r) + [one * (i == j) for j in range(n)] for i, r in enumerate(m)]
    red, pivots = rref(aug, mode)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix not invertible")
    return [row[n:] for row in red]


def det(m, mode=None):
    mode = mode or mat_mode(m)
    tol = _pivot_tol(m, mode)
    rows = [list(r) for r in m]
    n = len(rows)
    sign = 1
    out = None
    for c in range(n):
        if tol is None:
            pr = next((i for i in range(c, n) if rows[i][c] != 0), None)
        else:
            pr = max(range(c, n), key=lambda i: abs(rows[i][c]))
            if abs(rows[pr][c]) <= tol:
                pr = None
        if pr is None:
            return rows[0][0] * 0
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            sign = -sign
        piv = rows[c][c]
        out = piv if out is None else out * piv
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / piv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return out * sign


def normalize_leading(v):
    """Scale so the first nonzero coordinate is +1 (deterministic output)."""
    for x in v:
        if x != 0:
            return [y / x for y in v]
    return list(v)
