"""Search-space reduction: the action of (u, k), u in mu_{q+1}, k mod m, on pairs (b, c).

    (b, c) -> (b^(2^k) u^(2^(k+r)), c^(2^k) u^(2^k (2^r+1)))

preserves whether P_{c,b} has a zero (and the number of zeros), so only one b
per class B_b needs sweeping.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ParameterError
from .field import FieldCtx
from .subfield import SubfieldView


@dataclass(frozen=True, eq=False)
class OrbitPartition:
    m: int
    r: int
    representatives: list[int]
    class_of: np.ndarray = field(repr=False)
    class_sizes: dict[int, int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.representatives)

    def members(self, rep: int) -> np.ndarray:
        return np.flatnonzero(self.class_of == rep)


def act_on_pair(view: SubfieldView, b: int, c: int, u: int, k: int, r: int) -> tuple[int, int]:
    if u not in view.mu_list:
        raise ParameterError(f"{u:#x} is not a (q+1)-th root of unity")
    ctx = view.ctx
    k %= ctx.m
    b2 = ctx.mul(ctx.frob(b, k), ctx.frob(u, k + r))
    c2 = ctx.mul(ctx.frob(c, k), ctx.pow(ctx.frob(u, k), (1 << r) + 1))
    return b2, c2


def orbit_of_b(view: SubfieldView, b: int, r: int) -> np.ndarray:
    """Sorted class B_b = {b^(2^k) u^(2^(r+k))}."""
    ctx = view.ctx
    mu = view.mu_array
    parts = [ctx.vmul(ctx.frob(b, k), ctx.vfrob(mu, k + r)) for k in range(ctx.m)]
    return np.unique(np.concatenate(parts))


def partition(ctx: FieldCtx, view: SubfieldView, r: int) -> OrbitPartition:
    if ctx.m % 2:
        raise ParameterError(f"orbit partition needs even m, got {ctx.m}")
    class_of = np.full(ctx.size, -1, dtype=np.int64)
    reps: list[int] = []
    sizes: dict[int, int] = {}
    b = 0
    while b < ctx.size:
        # the smallest unassigned element is the minimum of its own class
        orbit = orbit_of_b(view, b, r)
        class_of[orbit] = b
        reps.append(b)
        sizes[b] = int(orbit.size)
        unassigned = np.flatnonzero(class_of[b:] < 0)
        b = b + int(unassigned[0]) if unassigned.size else ctx.size
    class_of.setflags(write=False)
    return OrbitPartition(ctx.m, r, reps, class_of, sizes)


def _fixed_count(m: int, k: int, shift: int) -> int:
    """#{x : x^(2^k) * w = x} for w = g^shift, including x = 0."""
    order = (1 << m) - 1
    g = math.gcd((1 << k) - 1, order)
    # (2^k - 1) L = -shift (mod order) has g solutions when g | shift, else none
    return 1 + (g if shift % g == 0 else 0)


def pair_orbit_count(ctx: FieldCtx, view: SubfieldView, r: int) -> int:
    """Number of orbits of the pair action on F x F^*, by Burnside's lemma."""
    m, order = ctx.m, ctx.order
    Q = 1 << r
    total = 0
    for u in view.mu_list:
        lu = int(ctx.log[u]) if ctx.log is not None else _dlog(ctx, u)
        for k in range(m):
            fix_b = _fixed_count(m, k, (pow(2, k + r, order) * lu) % order)
            fix_c = _fixed_count(m, k, (pow(2, k, order) * (Q + 1) * lu) % order) - 1
            total += fix_b * fix_c
    group_order = m * len(view.mu_list)
    assert total % group_order == 0
    return total // group_order


def _dlog(ctx: FieldCtx, x: int) -> int:
    y = 1
    for i in range(ctx.order):
        if y == x:
            return i
        y = ctx.mul(y, ctx.generator)
    raise ValueError(f"{x:#x} is not a unit")
