"""Rank-2 nilpotent generators with w^2 != 0, w^3 = 0, and their slicing
geometry.

A validated generator carries the derived subspaces: Img(w), the line
Img(w^2) spanned by ``v2``, ker(w^2), the slicing covector ``y_slicer``
spanning Img(w) intersect Img(w^2)-perp, and a basis of the base hyperplane
L_w = Img(w)-perp (+) Img(w^2).  Every point x outside ker(w^2) decomposes
uniquely as exp(t w) z with z in L_w; the time is
t = <x, y_slicer> / <w x, y_slicer>.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import (DimensionMismatch, InKernel, NotNilpotent, ScalarModeError,
                     SquareVanishes, WrongRank)
from .scalars import (MODE_FLOAT, MODE_QUADRATIC, QuadExt, infer_mode,
                      is_exact_mode, scalar_from_json, scalar_to_json)


@dataclass(frozen=True)
class NilpotentGenerator:
    n: int
    mode: str
    w: tuple              # n x n matrix, rows of tuples
    w2: tuple             # w squared
    img_w: tuple          # 2 basis vectors
    v2: tuple             # spans Img(w^2), first nonzero coord +1
    ker_w2: tuple         # basis of ker(w^2)
    y_slicer: tuple       # spans Img(w) /\ Img(w^2)-perp, first nonzero +1
    l_w_basis: tuple      # n-1 vectors: [v2, basis of Img(w)-perp...]
    wt_y: tuple           # w^T y_slicer, precomputed for slice times

    @property
    def exact(self) -> bool:
        return is_exact_mode(self.mode)

    def matrix(self):
        return [list(r) for r in self.w]

    def matrix_sq(self):
        return [list(r) for r in self.w2]


def _freeze(m):
    return tuple(tuple(r) for r in m)


def validate_generator(matrix) -> NilpotentGenerator:
    """Validate w: trace 0, w^3 = 0, rank 2, w^2 != 0; derive the slicing
    geometry exactly (exact mode) or with the pivot tolerance (float mode).
    """
    n = len(matrix)
    if n < 3:
        raise DimensionMismatch("dimension must be >= 3")
    if any(len(r) != n for r in matrix):
        raise DimensionMismatch("matrix must be square")
    mode = infer_mode([x for row in matrix for x in row])
    w = [list(r) for r in matrix]

    tr = sum(w[i][i] for i in range(n))
    w2 = linalg.mat_mul(w, w)
    w3 = linalg.mat_mul(w2, w)
    if mode == MODE_FLOAT:
        big = max(abs(x) for row in w for x in row) or 1.0
        tol = linalg.FLOAT_PIVOT_RTOL * big
        nilpotent = abs(tr) <= tol and all(abs(x) <= tol * big * big for row in w3 for x in row)
    else:
        nilpotent = tr == 0 and all(x == 0 for row in w3 for x in row)
    if not nilpotent:
        raise NotNilpotent("w^3 != 0 or trace(w) != 0")

    r = linalg.rank(w, mode)
    r2 = linalg.rank(w2, mode)
    if r2 == 0:
        raise SquareVanishes("w^2 = 0")
    if r != 2:
        raise WrongRank(f"rank(w) = {r}, expected 2")
    if r2 != 1:
        # impossible for Jordan type (3,1,...) but guard anyway
        raise NotNilpotent(f"rank(w^2) = {r2}, expected 1")

    img_w = linalg.column_space_basis(w, mode)
    v2 = linalg.normalize_leading(linalg.column_space_basis(w2, mode)[0])
    ker_w2 = linalg.nullspace(w2, mode)

    # y in span(img_w) with <y, v2> = 0: one equation in two coefficients
    b1, b2 = img_w
    a1, a2 = linalg.dot(b1, v2), linalg.dot(b2, v2)
    if a2 != 0 if mode != MODE_FLOAT else abs(a2) > 0:
        y = linalg.vec_sub(linalg.vec_scale(b1, a2), linalg.vec_scale(b2, a1))
    else:
        y = b2
    y = linalg.normalize_leading(y)

    # L_w = span(v2) + Img(w)-perp
    perp = linalg.nullspace(img_w, mode)
    l_w_basis = [v2] + [linalg.normalize_leading(u) for u in perp]

    wt_y = linalg.mat_vec(linalg.transpose(w), y)
    return NilpotentGenerator(
        n=n, mode=mode, w=_freeze(w), w2=_freeze(w2),
        img_w=_freeze(img_w), v2=tuple(v2), ker_w2=_freeze(ker_w2),
        y_slicer=tuple(y), l_w_basis=_freeze(l_w_basis), wt_y=tuple(wt_y))


def unipotent_apply(g: NilpotentGenerator, t, v):
    """exp(t w) v = v + t w v + (t^2/2) w^2 v (exact: w^3 = 0)."""
    if len(v) != g.n:
        raise DimensionMismatch(f"vector length {len(v)} != {g.n}")
    wv = linalg.mat_vec(g.matrix(), v)
    w2v = linalg.mat_vec(g.matrix_sq(), v)
    half_t2 = t * t / 2
    return [x + t * y + half_t2 * z for x, y, z in zip(v, wv, w2v)]


def exp_matrix(g: NilpotentGenerator, t):
    """exp(t w) as a matrix."""
    one = 1.0 if g.mode == MODE_FLOAT else Fraction(1)
    n = g.n
    half_t2 = t * t / 2
    return [[(one * (i == j)) + t * g.w[i][j] + half_t2 * g.w2[i][j]
             for j in range(n)] for i in range(n)]


def in_kernel_w2(g: NilpotentGenerator, x) -> bool:
    wx_y = linalg.dot(linalg.mat_vec(g.matrix(), x), g.y_slicer)
    if g.mode == MODE_FLOAT:
        scale = max(abs(v) for v in x) or 1.0
        return abs(wx_y) <= linalg.FLOAT_PIVOT_RTOL * scale
    return wx_y == 0


def slice_time(g: NilpotentGenerator, x):
    """The unique t with exp(-t w) x in L_w; requires x outside ker(w^2)."""
    if len(x) != g.n:
        raise DimensionMismatch(f"vector length {len(x)} != {g.n}")
    den = linalg.dot(list(g.wt_y), x)
    if g.mode == MODE_FLOAT:
        scale = max(abs(v) for v in x) or 1.0
        if abs(den) <= linalg.FLOAT_PIVOT_RTOL * scale:
            raise InKernel("x in ker(w^2): slicing undefined")
    elif den == 0:
        raise InKernel("x in ker(w^2): slicing undefined")
    num = linalg.dot(x, g.y_slicer)
    return num / den


# -- JSON interface --------------------------------------------------------

def matrix_from_json(obj) -> list:
    """Read {"mode": ..., "d": ..., "entries": [[...]]} into a scalar matrix."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    mode = obj.get("mode")
    if mode not in ("rational", "quadratic", "float"):
        raise ScalarModeError(f"unknown matrix mode {mode!r}")
    d = obj.get("d")
    if mode == MODE_QUADRATIC:
        if not isinstance(d, int) or d <= 1:
            raise ScalarModeError("quadratic mode requires square-free integer d > 1")
    entries = obj["entries"]
    return [[scalar_from_json(v, mode, d) for v in row] for row in entries]


def matrix_to_json(m) -> dict:
    mode = infer_mode([x for row in m for x in row])
    out = {"mode": mode, "entries": [[scalar_to_json(x) for x in row] for row in m]}
    if mode == MODE_QUADRATIC:
        ds = {x.d for row in m for x in row if isinstance(x, QuadExt)}
        out["d"] = ds.pop()
    return out


def generator_from_json(obj) -> NilpotentGenerator:
    return validate_generator(matrix_from_json(obj))
