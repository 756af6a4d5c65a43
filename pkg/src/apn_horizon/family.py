"""The bivariate family f_{b,c,r} on GF(2^m) x GF(2^m) and its companion polynomial P_{c,b}.

    f(x, y) = (x*y, x^(2^r+1) + x^(2^(r+m/2)) * y^(2^(m/2)) + b*x*y^(2^r) + c*y^(2^r+1))
    P(X)    = (c*X^(2^r+1) + b*X^(2^r) + 1)^(q+1) + X^(q+1),   q = 2^(m/2)

f is APN exactly when P has no zero in GF(2^m).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import field as fieldmod
from .errors import CapExceeded, DomainError, ParameterError
from .field import FieldCtx, artin_schreier_map
from .subfield import SubfieldView

DDT_CAP = 24  # bound on 2m for the direct differential check
REPORT_WITNESS_CAP = 16
_BLOCK_ELEMENTS = 1 << 22


@dataclass(frozen=True)
class FamilyParams:
    m: int
    r: int
    b: int
    c: int
    ctx: FieldCtx = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.m % 2:
            raise ParameterError(f"the family needs even m, got {self.m}")
        if self.r < 1:
            raise ParameterError(f"r must be positive, got {self.r}")
        if self.ctx is None:
            object.__setattr__(self, "ctx", fieldmod.get_field(self.m))
        elif self.ctx.m != self.m:
            raise ParameterError("field context degree does not match m")
        for name in ("b", "c"):
            v = getattr(self, name)
            if not 0 <= v < (1 << self.m):
                raise ParameterError(f"{name}={v:#x} is not an element of GF(2^{self.m})")

    @property
    def q(self) -> int:
        return 1 << (self.m // 2)

    @property
    def in_window(self) -> bool:
        """gcd(r, m) = 1 and r < m/2."""
        return math.gcd(self.r, self.m) == 1 and 2 * self.r < self.m

    def with_pair(self, b: int, c: int) -> FamilyParams:
        return FamilyParams(self.m, self.r, b, c, self.ctx)


def in_window(m: int, r: int) -> bool:
    return m % 2 == 0 and r >= 1 and math.gcd(r, m) == 1 and 2 * r < m


def window_rs(m: int) -> list[int]:
    """All r with gcd(r, m) = 1 and 1 <= r < m/2."""
    return [r for r in range(1, (m + 1) // 2) if in_window(m, r)]


@dataclass(frozen=True)
class DifferentialReport:
    uniformity: int
    witness_direction: tuple[int, int]
    witness_output: tuple[int, int]
    exact: bool = True

    @property
    def is_apn(self) -> bool:
        return self.uniformity == 2


@dataclass(frozen=True)
class ZeroCount:
    count: int
    witnesses: list[int]


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def eval_f(params: FamilyParams, x: int, y: int) -> tuple[int, int]:
    ctx, r, Q = params.ctx, params.r, 1 << params.r
    half = params.m // 2
    second = (
        ctx.pow(x, Q + 1)
        ^ ctx.mul(ctx.frob(x, r + half), ctx.frob(y, half))
        ^ ctx.mul(params.b, ctx.mul(x, ctx.frob(y, r)))
        ^ ctx.mul(params.c, ctx.pow(y, Q + 1))
    )
    return ctx.mul(x, y), second


def eval_P(params: FamilyParams, x: int) -> int:
    ctx, Q, q = params.ctx, 1 << params.r, params.q
    inner = ctx.mul(params.c, ctx.pow(x, Q + 1)) ^ ctx.mul(params.b, ctx.frob(x, params.r)) ^ 1
    return ctx.pow(inner, q + 1) ^ ctx.pow(x, q + 1)


@lru_cache(maxsize=16)
def power_tables(ctx: FieldCtx, r: int) -> dict[str, np.ndarray]:
    """x^(2^r), x^(2^r+1) and x^(q+1) for every x, used by the exhaustive scans."""
    xs = ctx.elements()
    Q = 1 << r
    tables = {"x": xs, "xQ": ctx.vpow(xs, Q), "xQ1": ctx.vpow(xs, Q + 1)}
    if ctx.m % 2 == 0:
        tables["xnorm"] = ctx.vpow(xs, (1 << (ctx.m // 2)) + 1)
    for arr in tables.values():
        arr.setflags(write=False)
    return tables


def veval_P(params: FamilyParams, xs=None) -> np.ndarray:
    """P evaluated on ``xs`` (default: the whole field, indexed by encoding)."""
    ctx, r, q = params.ctx, params.r, params.q
    if xs is None:
        t = power_tables(ctx, r)
        xQ, xQ1, xn = t["xQ"], t["xQ1"], t["xnorm"]
    else:
        xs = np.asarray(xs, dtype=np.int64)
        Q = 1 << r
        xQ, xQ1, xn = ctx.vpow(xs, Q), ctx.vpow(xs, Q + 1), ctx.vpow(xs, q + 1)
    inner = ctx.vmul(params.c, xQ1) ^ ctx.vmul(params.b, xQ) ^ 1
    return ctx.vpow(inner, q + 1) ^ xn


def count_zeros_P(params: FamilyParams) -> ZeroCount:
    values = veval_P(params)
    zeros = np.flatnonzero(values == 0)
    return ZeroCount(int(zeros.size), [int(z) for z in zeros])


def count_zeros_batch(ctx: FieldCtx, r: int, bs, cs) -> np.ndarray:
    """Exact zero counts of P_{c,b} for many pairs at once (direct oracle)."""
    bs = np.asarray(bs, dtype=np.int64)
    cs = np.asarray(cs, dtype=np.int64)
    bs, cs = np.broadcast_arrays(bs, cs)
    t = power_tables(ctx, r)
    q = 1 << (ctx.m // 2)
    out = np.empty(bs.shape[0], dtype=np.int64)
    step = max(1, _BLOCK_ELEMENTS // ctx.size)
    for lo in range(0, bs.shape[0], step):
        b = bs[lo:lo + step, None]
        c = cs[lo:lo + step, None]
        inner = ctx.vmul(c, t["xQ1"][None, :]) ^ ctx.vmul(b, t["xQ"][None, :]) ^ 1
        vals = ctx.vpow(inner, q + 1) ^ t["xnorm"][None, :]
        out[lo:lo + step] = np.count_nonzero(vals == 0, axis=1)
    return out


# ---------------------------------------------------------------------------
# direct differential check
# ---------------------------------------------------------------------------


def _f_table(params: FamilyParams) -> np.ndarray:
    """f on the packed domain: index (x << m) | y maps to (f1 << m) | f2."""
    ctx, m, r = params.ctx, params.m, params.r
    half = m // 2
    idx = np.arange(1 << (2 * m), dtype=np.int64)
    x = idx >> m
    y = idx & ((1 << m) - 1)
    Q = 1 << r
    f1 = ctx.vmul(x, y)
    f2 = (
        ctx.vpow(x, Q + 1)
        ^ ctx.vmul(ctx.vfrob(x, r + half), ctx.vfrob(y, half))
        ^ ctx.vmul(params.b, ctx.vmul(x, ctx.vfrob(y, r)))
        ^ ctx.vmul(params.c, ctx.vpow(y, Q + 1))
    )
    return (f1 << m) | f2


def differential_uniformity(
    params: FamilyParams, early_exit: bool = False, cap: int = DDT_CAP, force: bool = False
) -> DifferentialReport:
    """Largest number of solutions of f(v + a) + f(v) = t over a != 0 and all t.

    With ``early_exit`` the scan stops at the first block of directions where
    some count exceeds 2; the reported uniformity is then a lower bound.
    """
    m = params.m
    if 2 * m > cap and not force:
        raise CapExceeded(f"direct differential check on 2^{2 * m} points exceeds cap 2m <= {cap}")
    size = 1 << (2 * m)
    mask = (1 << m) - 1
    table = _f_table(params)
    idx = np.arange(size, dtype=np.int64)
    max_block = max(1, min(size - 1, _BLOCK_ELEMENTS // size))
    # early exit usually fires within the first few directions
    block = min(8, max_block) if early_exit else max_block
    best, best_dir, best_out = 0, 0, 0
    exact = True
    lo = 1
    while lo < size:
        dirs = np.arange(lo, min(lo + block, size), dtype=np.int64)
        deriv = table[idx[None, :] ^ dirs[:, None]] ^ table[None, :]
        offsets = (np.arange(dirs.size, dtype=np.int64) * size)[:, None]
        counts = np.bincount((deriv + offsets).ravel(), minlength=dirs.size * size).reshape(dirs.size, size)
        row_max = counts.max(axis=1)
        k = int(np.argmax(row_max))
        if row_max[k] > best:
            best = int(row_max[k])
            best_dir = int(dirs[k])
            best_out = int(np.argmax(counts[k]))
        lo += dirs.size
        if early_exit and best > 2:
            exact = lo >= size
            break
        block = min(2 * block, max_block)
    return DifferentialReport(
        best, (best_dir >> m, best_dir & mask), (best_out >> m, best_out & mask), exact
    )


# ---------------------------------------------------------------------------
# c = 0: constructive zero of P_{0,b}
# ---------------------------------------------------------------------------


def _c0_exponents(m: int, r: int) -> tuple[int, int]:
    """(-2^(-r) as a power, inverse of 2^r - 1 modulo q - 1)."""
    order = (1 << m) - 1
    q = 1 << (m // 2)
    neg_inv_frob = (-pow(2, m - r)) % order
    root_exp = pow((1 << r) - 1, -1, q - 1) if q > 2 else 1
    return neg_inv_frob, root_exp


def _check_c0(view: SubfieldView, b: int, r: int) -> None:
    m = view.ctx.m
    if math.gcd(r, m) != 1:
        raise ParameterError(f"c = 0 construction needs gcd(r, m) = 1, got r={r}, m={m}")
    if not 0 <= b < view.ctx.size:
        raise ParameterError(f"b={b:#x} is not a field element")


def construct_zero_c0_traced(view: SubfieldView, b: int, r: int) -> tuple[int, int]:
    """Zero of (b X^(2^r) + 1)^(q+1) + X^(q+1) and the number of attempts used.

    Attempt 1 follows the Hilbert-90 chain: b = u' t with t in F_q; the root
    is X = b^(-2^-r) * tbar * y where tbar^(2^r - 1) = t^(-2^-r) and
    y^(2^r) + y = tbar^(-2^r).  Attempt 2 is a linear scan, used only if the
    chain output fails the re-check.
    """
    _check_c0(view, b, r)
    ctx = view.ctx
    params = FamilyParams(ctx.m, r, b, 0, ctx)
    if b == 0:
        return view.mu_list[0], 1
    neg_inv_frob, root_exp = _c0_exponents(ctx.m, r)
    _, t = view.polar_decompose(b)
    t_prime = ctx.pow(t, neg_inv_frob)
    t_bar = ctx.pow(t_prime, root_exp)
    rhs = ctx.inv(ctx.frob(t_bar, r))
    y = fieldmod.solve_artin_schreier(ctx, r, rhs)
    if y is not None:
        x = ctx.mul(ctx.mul(ctx.pow(b, neg_inv_frob), t_bar), y)
        if eval_P(params, x) == 0:
            return x, 1
    zeros = count_zeros_P(params).witnesses
    if not zeros:
        raise AssertionError(f"P_(0,{b:#x}) has no zero for r={r}, m={ctx.m}")
    return zeros[0], 2


def construct_zero_c0(view: SubfieldView, b: int, r: int) -> int:
    return construct_zero_c0_traced(view, b, r)[0]


def vconstruct_zero_c0(view: SubfieldView, r: int, bs) -> np.ndarray:
    """The Hilbert-90 chain for many nonzero b at once, without validation."""
    ctx = view.ctx
    bs = np.asarray(bs, dtype=np.int64)
    if np.any(bs == 0):
        raise DomainError("vectorized c = 0 construction needs b != 0")
    if math.gcd(r, ctx.m) != 1:
        raise ParameterError(f"c = 0 construction needs gcd(r, m) = 1, got r={r}, m={ctx.m}")
    neg_inv_frob, root_exp = _c0_exponents(ctx.m, r)
    t = ctx.vfrob(ctx.vpow(bs, view.q + 1), ctx.m - 1)
    t_bar = ctx.vpow(ctx.vpow(t, neg_inv_frob), root_exp)
    rhs = ctx.vinv(ctx.vfrob(t_bar, r))
    y, ok = artin_schreier_map(ctx, r).vsolve(rhs)
    y = np.where(ok, y & ~1, 0)
    return ctx.vmul(ctx.vmul(ctx.vpow(bs, neg_inv_frob), t_bar), y)
