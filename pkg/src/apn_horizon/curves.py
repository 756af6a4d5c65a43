"""Curve side of the zero question.

Writing X = x0 + xi*x1 with x0, x1 in F_q, P_{c,b}(X) = 0 becomes a point of the
plane curve D_{b,c,r} over F_q of degree d = 2^(r+1) + 2.  For an absolutely
irreducible curve the Aubry-Perret bound gives

    q + 1 - (d-1)(d-2) sqrt(q)  <=  #points  <=  q + 1 + (d-1)(d-2) sqrt(q)

and D has two points at infinity, so the affine count is at least the lower
end minus 2.  All comparisons against sqrt(q) are done on squared integers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import CapExceeded, ParameterError
from .family import FamilyParams
from .subfield import SubfieldView

POINT_COUNT_CAP = 22


@dataclass(frozen=True)
class CurveSpec:
    params: FamilyParams
    view: SubfieldView

    @property
    def xi(self) -> int:
        return self.view.xi

    @property
    def degree(self) -> int:
        return (1 << (self.params.r + 1)) + 2


def _factor(ctx, b, c, Q, X):
    return ctx.vmul(c, ctx.vpow(X, Q + 1)) ^ ctx.vmul(b, ctx.vpow(X, Q)) ^ 1


def veval_D(spec: CurveSpec, x0, x1) -> np.ndarray:
    """The defining polynomial of D_{b,c,r} at points of F_q^2, as written (no norm shortcut)."""
    p, view = spec.params, spec.view
    ctx, q = p.ctx, view.q
    Q = 1 << p.r
    x0 = np.asarray(x0, dtype=np.int64)
    x1 = np.asarray(x1, dtype=np.int64)
    xi_conj = ctx.pow(view.xi, q)
    X = x0 ^ ctx.vmul(view.xi, x1)
    Y = x0 ^ ctx.vmul(xi_conj, x1)
    left = _factor(ctx, p.b, p.c, Q, X)
    right = _factor(ctx, ctx.pow(p.b, q), ctx.pow(p.c, q), Q, Y)
    return ctx.vmul(left, right) ^ ctx.vmul(X, Y)


def eval_D(spec: CurveSpec, x0: int, x1: int) -> int:
    view = spec.view
    if not (view.in_subfield(x0) and view.in_subfield(x1)):
        raise ParameterError("D_{b,c,r} is evaluated at points with coordinates in F_q")
    return int(veval_D(spec, x0, x1))


def veval_C(params: FamilyParams, X, Y) -> np.ndarray:
    """(c X^(2^r+1) + b X^(2^r) + 1)(c^q Y^(2^r+1) + b^q Y^(2^r) + 1) + X Y."""
    ctx, q = params.ctx, params.q
    Q = 1 << params.r
    X = np.asarray(X, dtype=np.int64)
    Y = np.asarray(Y, dtype=np.int64)
    left = _factor(ctx, params.b, params.c, Q, X)
    right = _factor(ctx, ctx.pow(params.b, q), ctx.pow(params.c, q), Q, Y)
    return ctx.vmul(left, right) ^ ctx.vmul(X, Y)


def count_affine_points(spec: CurveSpec, cap: int = POINT_COUNT_CAP, force: bool = False) -> int:
    m = spec.params.m
    if m > cap and not force:
        raise CapExceeded(f"point count over 2^{m} pairs exceeds cap m <= {cap}")
    sub = spec.view.subfield_elements
    total = 0
    stripe = max(1, (1 << 20) // sub.size)
    for lo in range(0, sub.size, stripe):
        x0 = sub[lo:lo + stripe, None]
        vals = veval_D(spec, x0, sub[None, :])
        total += int(np.count_nonzero(vals == 0))
    return total


def count_affine_points_batch(view: SubfieldView, r: int, bs, cs, cap: int = POINT_COUNT_CAP) -> np.ndarray:
    """``count_affine_points`` for many pairs (bs[i], cs[i]) sharing one r."""
    ctx, q = view.ctx, view.q
    if ctx.m > cap:
        raise CapExceeded(f"point count over 2^{ctx.m} pairs exceeds cap m <= {cap}")
    bs, cs = np.broadcast_arrays(np.asarray(bs, dtype=np.int64), np.asarray(cs, dtype=np.int64))
    Q = 1 << r
    sub = view.subfield_elements
    x0, x1 = (a.ravel() for a in np.meshgrid(sub, sub, indexing="ij"))
    X = x0 ^ ctx.vmul(view.xi, x1)
    Y = x0 ^ ctx.vmul(ctx.pow(view.xi, q), x1)
    XQ, XQ1 = ctx.vpow(X, Q), ctx.vpow(X, Q + 1)
    YQ, YQ1 = ctx.vpow(Y, Q), ctx.vpow(Y, Q + 1)
    XY = ctx.vmul(X, Y)
    bq, cq = ctx.vpow(bs, q), ctx.vpow(cs, q)
    out = np.empty(bs.shape[0], dtype=np.int64)
    step = max(1, (1 << 22) // X.size)
    for lo in range(0, bs.shape[0], step):
        sl = slice(lo, lo + step)
        left = ctx.vmul(cs[sl, None], XQ1) ^ ctx.vmul(bs[sl, None], XQ) ^ 1
        right = ctx.vmul(cq[sl, None], YQ1) ^ ctx.vmul(bq[sl, None], YQ) ^ 1
        vals = ctx.vmul(left, right) ^ XY
        out[sl] = np.count_nonzero(vals == 0, axis=1)
    return out


# ---------------------------------------------------------------------------
# exact bound arithmetic
# ---------------------------------------------------------------------------


def _le_k_sqrt_q(n: int, k: int, q: int) -> bool:
    """n <= k * sqrt(q) for integers n, k >= 0, q > 0."""
    return n <= 0 or n * n <= k * k * q


def weil_constant(d: int) -> int:
    return (d - 1) * (d - 2)


def in_aubry_perret_window(count: int, q: int, d: int) -> bool:
    """q + 1 - K sqrt(q) - 2 <= count <= q + 1 + K sqrt(q), K = (d-1)(d-2)."""
    k = weil_constant(d)
    lower_ok = _le_k_sqrt_q(q - 1 - count, k, q)
    upper_ok = _le_k_sqrt_q(count - q - 1, k, q)
    return lower_ok and upper_ok


def aubry_perret_window(q: int, d: int) -> tuple[float, float]:
    """Floating-point bounds, for display only."""
    spread = weil_constant(d) * math.sqrt(q)
    return q + 1 - spread - 2, q + 1 + spread


@dataclass(frozen=True)
class ThresholdResult:
    m: int
    r: int
    q: int
    d: int
    guaranteed: bool
    lower_bound_positive: bool
    small_r_condition: bool


def guaranteed_point(m: int, r: int) -> ThresholdResult:
    """Whether q + 1 - (d-1)(d-2) sqrt(q) - 2 > 0, i.e. every D_{b,c,r} has an affine point."""
    if m % 2 or m < 2:
        raise ParameterError(f"threshold needs even m >= 2, got {m}")
    if r < 1:
        raise ParameterError(f"threshold needs r >= 1, got {r}")
    q = 1 << (m // 2)
    d = (1 << (r + 1)) + 2
    k = weil_constant(d)
    positive = (q - 1) ** 2 > k * k * q
    # r < m/8 - 1  <=>  8(r + 1) < m
    sufficient = 8 * (r + 1) < m
    return ThresholdResult(m, r, q, d, positive, positive, sufficient)
