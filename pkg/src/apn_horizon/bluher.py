"""Fast zero detection for P_{c,b} through projective polynomials x^(2^r+1) + x + A.

P_{c,b} has a zero iff some u in mu_{q+1} makes

    c x^(2^r+1) + b x^(2^r) + u x + 1 = 0

solvable.  Away from the degenerate u (u c^(2^r-1) + b^(2^r) = 0) the
substitution x -> s y + b/c turns it into y^(2^r+1) + y + A(u) = 0 with

    A(u) = (u b + c) c^(2^r-1) / (u c^(2^r-1) + b^(2^r))^(2^-r + 1)

and the rootless A are exactly the values a (a+1)^(2^r + 2^-r) / (a + a^(2^-r))^(2^r+1)
for non-cubes a (tabulated in ``BluherSet``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import ParameterError
from .family import FamilyParams, power_tables
from .field import FieldCtx, linear_map_from_function
from .subfield import SubfieldView


class Path(str, Enum):
    BLUHER = "bluher"
    DEGENERATE_DIRECT = "degenerate-direct"
    FACTOR_SHORTCUT = "factor-shortcut"


_PATH_CODES = {1: Path.BLUHER, 2: Path.DEGENERATE_DIRECT, 3: Path.FACTOR_SHORTCUT}
_CODE_OF = {None: 0, **{p: code for code, p in _PATH_CODES.items()}}


@dataclass(frozen=True, eq=False)
class BluherSet:
    m: int
    r: int
    membership: np.ndarray = field(repr=False)

    def __contains__(self, A: int) -> bool:
        return bool(self.membership[A])

    def __len__(self) -> int:
        return int(np.count_nonzero(self.membership))

    def members(self) -> np.ndarray:
        return np.flatnonzero(self.membership)


def bluher_values(ctx: FieldCtx, r: int, a) -> np.ndarray:
    """a (a+1)^(2^r + 2^-r) / (a + a^(2^-r))^(2^r+1) for non-cubes a (so a not in {0, 1})."""
    m = ctx.m
    Q = 1 << r
    inv_frob = pow(2, m - r)
    a = np.asarray(a, dtype=np.int64)
    num = ctx.vmul(a, ctx.vpow(a ^ 1, Q + inv_frob))
    den = ctx.vpow(a ^ ctx.vpow(a, inv_frob), Q + 1)
    return ctx.vmul(num, ctx.vinv(den))


def build_bluher_set(ctx: FieldCtx, view: SubfieldView, r: int) -> BluherSet:
    if math.gcd(r, ctx.m) != 1:
        raise ParameterError(f"Bluher set needs gcd(r, m) = 1, got r={r}, m={ctx.m}")
    xs = ctx.elements()
    non_cubes = xs[~view.vis_cube(xs)]
    table = np.zeros(ctx.size, dtype=bool)
    table[bluher_values(ctx, r, non_cubes)] = True
    table.setflags(write=False)
    return BluherSet(ctx.m, r, table)


@lru_cache(maxsize=16)
def bluher_set_for(view: SubfieldView, r: int) -> BluherSet:
    return build_bluher_set(view.ctx, view, r)


def projective_has_root(ctx: FieldCtx, A: int, r: int) -> tuple[bool, int | None]:
    """Linear scan for a root of x^(2^r+1) + x + A; returns (found, smallest root)."""
    t = power_tables(ctx, r)
    roots = np.flatnonzero((t["xQ1"] ^ t["x"]) == A)
    if roots.size:
        return True, int(roots[0])
    return False, None


def projective_rootless_table(ctx: FieldCtx, r: int) -> np.ndarray:
    """Boolean table over all A: True where x^(2^r+1) + x + A has no root."""
    t = power_tables(ctx, r)
    hit = np.zeros(ctx.size, dtype=bool)
    hit[t["xQ1"] ^ t["x"]] = True
    return ~hit


def is_permutation_L(ctx: FieldCtx, A: int, r: int) -> bool:
    """Whether X^(2^2r) + X^(2^r) + A X has trivial kernel on GF(2^m)."""
    lin = linear_map_from_function(ctx, lambda x: ctx.frob(x, 2 * r) ^ ctx.frob(x, r) ^ ctx.mul(A, x))
    return lin.rank == ctx.m


def projective_A(ctx: FieldCtx, r: int, b: int, c: int, u: int) -> int | None:
    """A(u) for the u-equation, or None when u c^(2^r-1) + b^(2^r) vanishes."""
    Q = 1 << r
    cq1 = ctx.pow(c, Q - 1)
    den = ctx.mul(u, cq1) ^ ctx.frob(b, r)
    if den == 0:
        return None
    num = ctx.mul(ctx.mul(u, b) ^ c, cq1)
    return ctx.div(num, ctx.pow(den, pow(2, ctx.m - r) + 1))


def u_equation_has_root(ctx: FieldCtx, r: int, b: int, c: int, u: int) -> bool:
    """Direct scan of c x^(2^r+1) + b x^(2^r) + u x + 1 over the field."""
    t = power_tables(ctx, r)
    vals = ctx.vmul(c, t["xQ1"]) ^ ctx.vmul(b, t["xQ"]) ^ ctx.vmul(u, t["x"]) ^ 1
    return bool(np.any(vals == 0))


@dataclass(frozen=True)
class FastVerdict:
    has_zero: bool
    witness_u: int | None
    path: Path | None


def has_zero_fast(params: FamilyParams, view: SubfieldView, bset: BluherSet) -> FastVerdict:
    """Decide whether P_{c,b} has a zero by walking mu_{q+1} in ascending order."""
    if params.c == 0:
        raise ParameterError("has_zero_fast needs c != 0; c = 0 is handled by construct_zero_c0")
    if bset.r != params.r or bset.m != params.m:
        raise ParameterError("Bluher set built for different (m, r)")
    ctx, r, b, c = params.ctx, params.r, params.b, params.c
    for u in view.mu_list:
        A = projective_A(ctx, r, b, c, u)
        if A is None:
            if u_equation_has_root(ctx, r, b, c, u):
                return FastVerdict(True, u, Path.DEGENERATE_DIRECT)
        elif A == 0:
            # u b = c: the u-equation is (b x^(2^r) + 1)((c/b) x + 1), root x = b/c
            return FastVerdict(True, u, Path.FACTOR_SHORTCUT)
        elif A not in bset:
            return FastVerdict(True, u, Path.BLUHER)
    return FastVerdict(False, None, None)


def has_zero_fast_batch(
    ctx: FieldCtx, view: SubfieldView, bset: BluherSet, r: int, bs, cs
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized ``has_zero_fast`` over pairs (bs[i], cs[i]), all cs nonzero.

    Returns (has_zero, witness_u, path_code); witness_u is 0 where no zero
    exists, path codes are 1 bluher, 2 degenerate-direct, 3 factor-shortcut.
    """
    bs, cs = np.broadcast_arrays(np.asarray(bs, dtype=np.int64), np.asarray(cs, dtype=np.int64))
    if np.any(cs == 0):
        raise ParameterError("has_zero_fast needs c != 0")
    n = bs.shape[0]
    if ctx.log is None:
        verdicts = [
            has_zero_fast(FamilyParams(ctx.m, r, int(b), int(c), ctx), view, bset) for b, c in zip(bs, cs)
        ]
        return (
            np.array([v.has_zero for v in verdicts], dtype=bool),
            np.array([v.witness_u or 0 for v in verdicts], dtype=np.int64),
            np.array([_CODE_OF[v.path] for v in verdicts], dtype=np.int8),
        )
    order = ctx.order
    Q = 1 << r
    den_exp = (pow(2, ctx.m - r) + 1) % order
    log = ctx.log
    log_cq1 = ((Q - 1) * log[cs]) % order
    bQ = ctx.vfrob(bs, r)
    member = bset.membership

    has_zero = np.zeros(n, dtype=bool)
    witness = np.zeros(n, dtype=np.int64)
    path = np.zeros(n, dtype=np.int8)
    pending = np.arange(n)
    for u in view.mu_list:
        if pending.size == 0:
            break
        lu = int(log[u])
        den = ctx.exp[(lu + log_cq1[pending]) % order] ^ bQ[pending]
        num = ctx.vmul(u, bs[pending]) ^ cs[pending]
        degenerate = den == 0
        factor = ~degenerate & (num == 0)
        regular = ~degenerate & ~factor
        hit = factor.copy()
        if np.any(regular):
            ri = np.flatnonzero(regular)
            logA = (log[num[ri]] + log_cq1[pending[ri]] - den_exp * log[den[ri]]) % order
            hit[ri] = ~member[ctx.exp[logA]]
        codes = np.where(factor, 3, 1).astype(np.int8)
        for i in np.flatnonzero(degenerate):
            p = pending[i]
            if u_equation_has_root(ctx, r, int(bs[p]), int(cs[p]), u):
                hit[i] = True
                codes[i] = 2
        done = pending[hit]
        has_zero[done] = True
        witness[done] = u
        path[done] = codes[hit]
        pending = pending[~hit]
    return has_zero, witness, path


def path_name(code: int) -> Path | None:
    return _PATH_CODES.get(int(code))
