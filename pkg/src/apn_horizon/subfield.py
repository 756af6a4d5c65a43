"""The index-2 subfield F_q of F_{q^2} = GF(2^m), q = 2^(m/2)."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError, ParameterError
from .field import FieldCtx


@dataclass(frozen=True, eq=False)
class SubfieldView:
    ctx: FieldCtx
    q: int
    xi: int
    mu_list: tuple[int, ...]
    third_root_exponent: int
    subfield_elements: np.ndarray = field(repr=False)

    @property
    def mu_array(self) -> np.ndarray:
        return np.asarray(self.mu_list, dtype=np.int64)

    def norm(self, x: int) -> int:
        return self.ctx.pow(x, self.q + 1)

    def in_subfield(self, x: int) -> bool:
        return self.ctx.pow(x, self.q) == x

    def norm_membership(self, x: int) -> tuple[int, bool]:
        """(x^(q+1), whether x lies in F_q)."""
        return self.norm(x), self.in_subfield(x)

    def conj(self, x: int) -> int:
        return self.ctx.pow(x, self.q)

    def polar_decompose(self, b: int) -> tuple[int, int]:
        """Write b = u * t with u^(q+1) = 1 and t in F_q^*."""
        if b == 0:
            raise DomainError("polar decomposition of zero")
        t = self.ctx.sqrt(self.norm(b))
        u = self.ctx.div(b, t)
        return u, t

    def is_cube(self, x: int) -> bool:
        return x == 0 or self.ctx.pow(x, self.third_root_exponent) == 1

    def vis_cube(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a == 0) | (self.ctx.vpow(a, self.third_root_exponent) == 1)

    def combine(self, x0: int, x1: int) -> int:
        """x0 + xi * x1."""
        return x0 ^ self.ctx.mul(self.xi, x1)


def build(ctx: FieldCtx) -> SubfieldView:
    if ctx.m % 2:
        raise ParameterError(f"the subfield view needs even m, got {ctx.m}")
    q = 1 << (ctx.m // 2)
    g = ctx.generator
    mu = sorted({ctx.pow(g, j * (q - 1)) for j in range(q + 1)})
    xi = next(x for x in range(ctx.size) if ctx.pow(x, q) != x)
    # F_q is {0} together with the powers of g^(q+1)
    exps = np.arange(q - 1, dtype=np.int64) * (q + 1)
    if ctx.exp is not None:
        sub = ctx.exp[exps % ctx.order]
    else:
        sub = np.array([ctx.pow(g, int(e)) for e in exps], dtype=np.int64)
    sub = np.sort(np.concatenate(([0], sub)))
    return SubfieldView(ctx, q, xi, tuple(mu), ctx.order // 3, sub)


@lru_cache(maxsize=32)
def view_for(ctx: FieldCtx) -> SubfieldView:
    return build(ctx)
