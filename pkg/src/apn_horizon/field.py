"""Arithmetic in GF(2^m) with elements encoded as little-endian coefficient bits.

Element ``v`` stands for the polynomial sum(bit_i(v) * z^i) reduced modulo an
irreducible polynomial of degree m.  Two multiply kernels exist: discrete-log
tables (built when 2^m is at most ``table_cap``) and shift-and-reduce.  The
second one is always available so the tables can be checked against it.

Every scalar operation has a vectorized twin prefixed with ``v`` that works on
integer numpy arrays; the exhaustive sweeps are written against those.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from sympy import factorint

from .errors import DomainError, ParameterError

DEFAULT_TABLE_CAP = 1 << 24
MAX_DEGREE = 63

# ---------------------------------------------------------------------------
# GF(2)[z] on integers
# ---------------------------------------------------------------------------


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit-encoded GF(2) polynomials."""
    acc = 0
    while b:
        if b & 1:
            acc ^= a
        a <<= 1
        b >>= 1
    return acc


def poly_mod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while a.bit_length() - 1 >= df:
        a ^= f << (a.bit_length() - 1 - df)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _frobenius_z(k: int, f: int) -> int:
    """z^(2^k) mod f."""
    x = 2
    for _ in range(k):
        x = poly_mod(clmul(x, x), f)
    return x


def is_irreducible(f: int) -> bool:
    """Rabin's test: f | z^(2^m) - z and gcd(f, z^(2^(m/p)) - z) = 1 for primes p | m."""
    m = f.bit_length() - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if _frobenius_z(m, f) != poly_mod(2, f):
        return False
    for p in factorint(m):
        h = _frobenius_z(m // p, f) ^ 2
        if poly_gcd(f, h) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def find_irreducible(m: int) -> int:
    """Smallest encoding of an irreducible degree-m polynomial over GF(2)."""
    if m < 2:
        raise ParameterError(f"find_irreducible needs m >= 2, got {m}")
    if m > MAX_DEGREE:
        raise ParameterError(f"degree {m} exceeds the supported maximum {MAX_DEGREE}")
    # even constant term means z divides f
    for f in range((1 << m) | 1, 1 << (m + 1), 2):
        if is_irreducible(f):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


def parse_hex(text: str) -> int:
    return int(text, 16)


def fmt_hex(value: int) -> str:
    return f"{int(value):#x}"


# ---------------------------------------------------------------------------
# shift-and-reduce kernels (table independent)
# ---------------------------------------------------------------------------


def mul_schoolbook(a: int, b: int, m: int, modulus: int) -> int:
    acc = 0
    top = 1 << m
    while b:
        if b & 1:
            acc ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= modulus
    return acc


def _pow_schoolbook(x: int, e: int, m: int, modulus: int) -> int:
    result = 1
    while e:
        if e & 1:
            result = mul_schoolbook(result, x, m, modulus)
        x = mul_schoolbook(x, x, m, modulus)
        e >>= 1
    return result


def vmul_schoolbook(a, b, m: int, modulus: int) -> np.ndarray:
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    a = a.copy()
    acc = np.zeros_like(a)
    for i in range(m):
        acc ^= np.where((b >> i) & 1, a, 0)
        a <<= 1
        a ^= np.where((a >> m) & 1, modulus, 0)
    return acc


def _find_generator(m: int, modulus: int) -> int:
    order = (1 << m) - 1
    cofactors = [order // p for p in factorint(order)]
    for g in range(2, 1 << m):
        if all(_pow_schoolbook(g, e, m, modulus) != 1 for e in cofactors):
            return g
    if order == 1:
        return 1
    raise AssertionError("multiplicative group is cyclic, a generator must exist")


def _build_tables(m: int, modulus: int, g: int) -> tuple[np.ndarray, np.ndarray]:
    order = (1 << m) - 1
    exp = np.empty(order, dtype=np.int64)
    exp[0] = 1
    filled, step = 1, g  # step = g^filled
    while filled < order:
        take = min(filled, order - filled)
        exp[filled:filled + take] = vmul_schoolbook(exp[:take], step, m, modulus)
        filled += take
        step = mul_schoolbook(step, step, m, modulus)
    log = np.zeros(1 << m, dtype=np.int64)
    log[exp] = np.arange(order, dtype=np.int64)
    return exp, log


# ---------------------------------------------------------------------------
# field context
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """Immutable description of GF(2^m).

    ``exp[i] = generator^i`` for 0 <= i < 2^m - 1 and ``log`` is its inverse
    (``log[0]`` is a placeholder; every table path masks zero explicitly).
    """

    m: int
    modulus: int
    generator: int
    exp: np.ndarray | None = field(default=None, repr=False)
    log: np.ndarray | None = field(default=None, repr=False)

    @classmethod
    def build(cls, m: int, modulus: int | None = None, table_cap: int = DEFAULT_TABLE_CAP) -> FieldCtx:
        if modulus is None:
            modulus = find_irreducible(m)
        elif modulus.bit_length() - 1 != m or not is_irreducible(modulus):
            raise ParameterError(f"modulus {modulus:#x} is not an irreducible polynomial of degree {m}")
        if m > MAX_DEGREE:
            raise ParameterError(f"degree {m} exceeds the supported maximum {MAX_DEGREE}")
        g = _find_generator(m, modulus)
        if (1 << m) <= table_cap:
            exp, log = _build_tables(m, modulus, g)
            return cls(m, modulus, g, exp, log)
        return cls(m, modulus, g)

    @property
    def size(self) -> int:
        return 1 << self.m

    @property
    def order(self) -> int:
        """Order of the multiplicative group, 2^m - 1."""
        return (1 << self.m) - 1

    @property
    def log_tables_present(self) -> bool:
        return self.exp is not None

    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    # -- scalar arithmetic ------------------------------------------------

    @staticmethod
    def add(x: int, y: int) -> int:
        return x ^ y

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        if self.exp is None:
            return mul_schoolbook(x, y, self.m, self.modulus)
        return int(self.exp[(self.log[x] + self.log[y]) % self.order])

    def mul_schoolbook(self, x: int, y: int) -> int:
        return mul_schoolbook(x, y, self.m, self.modulus)

    def inv(self, x: int) -> int:
        if x == 0:
            raise DomainError("inverse of zero")
        if self.exp is None:
            return _pow_schoolbook(x, self.order - 1, self.m, self.modulus)
        return int(self.exp[(-self.log[x]) % self.order])

    def div(self, x: int, y: int) -> int:
        return self.mul(x, self.inv(y))

    def pow(self, x: int, e: int) -> int:
        if x == 0:
            if e < 0:
                raise DomainError("negative power of zero")
            return 1 if e == 0 else 0
        e %= self.order
        if self.exp is None:
            return _pow_schoolbook(x, e, self.m, self.modulus)
        return int(self.exp[(int(self.log[x]) * e) % self.order])

    def frob(self, x: int, k: int) -> int:
        """x^(2^k); negative k gives the inverse Frobenius iterate."""
        return self.pow(x, pow(2, k % self.m))

    pow2k = frob

    def sqrt(self, x: int) -> int:
        return self.frob(x, self.m - 1)

    def trace(self, x: int) -> int:
        """Absolute trace sum_{i<m} x^(2^i), returned as 0 or 1."""
        t, y = 0, x
        for _ in range(self.m):
            t ^= y
            y = self.mul(y, y)
        assert t in (0, 1)
        return t

    @property
    def trace_mask(self) -> int:
        """Bit mask with trace(x) = parity(x & trace_mask)."""
        return _trace_mask(self)

    # -- vectorized arithmetic --------------------------------------------

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.exp is None:
            return vmul_schoolbook(a, b, self.m, self.modulus)
        prod = self.exp[(self.log[a] + self.log[b]) % self.order]
        return np.where((a == 0) | (b == 0), 0, prod)

    def vpow(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e < 0 and np.any(a == 0):
            raise DomainError("negative power of zero")
        if e == 0:
            return np.ones_like(a)
        e %= self.order
        if self.exp is None:
            result = np.ones_like(a)
            base = a.copy()
            while e:
                if e & 1:
                    result = vmul_schoolbook(result, base, self.m, self.modulus)
                base = vmul_schoolbook(base, base, self.m, self.modulus)
                e >>= 1
            return np.where(a == 0, 0, result)
        return np.where(a == 0, 0, self.exp[(self.log[a] * e) % self.order])

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DomainError("inverse of zero")
        return self.vpow(a, -1)

    def vfrob(self, a, k: int) -> np.ndarray:
        return self.vpow(a, pow(2, k % self.m))

    def vtrace(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (np.bitwise_count(a & self.trace_mask) & 1).astype(np.int64)


@lru_cache(maxsize=None)
def _trace_mask(ctx: FieldCtx) -> int:
    return sum(ctx.trace(1 << i) << i for i in range(ctx.m))


@lru_cache(maxsize=32)
def get_field(m: int, modulus: int | None = None) -> FieldCtx:
    """Cached FieldCtx for (m, modulus); the canonical modulus when none is given."""
    return FieldCtx.build(m, modulus)


def arith(ctx: FieldCtx, op: str, *operands: int) -> int:
    """Dispatch ``add``, ``mul``, ``inv`` or ``pow2k`` by name."""
    if op == "add":
        return ctx.add(*operands)
    if op == "mul":
        return ctx.mul(*operands)
    if op == "inv":
        return ctx.inv(*operands)
    if op == "pow2k":
        return ctx.frob(*operands)
    raise ParameterError(f"unknown field operation {op!r}")


# ---------------------------------------------------------------------------
# GF(2)-linear maps on the field
# ---------------------------------------------------------------------------


class GF2LinearMap:
    """A GF(2)-linear map F -> F given by the images of the basis vectors z^i.

    Elimination keeps a fully reduced basis of the image together with
    preimages, so ``solve`` is linear in its argument and vectorizes.
    """

    def __init__(self, images: list[int]):
        self.images = list(images)
        rows: list[list[int]] = []  # [pivot_bit, image_vector, preimage]
        kernel: list[int] = []
        for i, v in enumerate(self.images):
            pre = 1 << i
            for piv, vec, p in rows:
                if (v >> piv) & 1:
                    v ^= vec
                    pre ^= p
            if v == 0:
                kernel.append(pre)
                continue
            piv = v.bit_length() - 1
            for row in rows:
                if (row[1] >> piv) & 1:
                    row[1] ^= v
                    row[2] ^= pre
            rows.append([piv, v, pre])
        self._rows = [tuple(r) for r in rows]
        self.kernel_basis = kernel

    @property
    def rank(self) -> int:
        return len(self._rows)

    def apply(self, x: int) -> int:
        out = 0
        i = 0
        while x:
            if x & 1:
                out ^= self.images[i]
            x >>= 1
            i += 1
        return out

    def solve(self, d: int) -> int | None:
        """Some x with apply(x) == d, or None when d is outside the image."""
        x = 0
        for piv, vec, pre in self._rows:
            if (d >> piv) & 1:
                d ^= vec
                x ^= pre
        return x if d == 0 else None

    def vsolve(self, d) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized solve: returns (x, ok) where ok marks d inside the image."""
        d = np.asarray(d, dtype=np.int64)
        x = np.zeros_like(d)
        residue = d.copy()
        for piv, vec, pre in self._rows:
            hit = ((d >> piv) & 1).astype(bool)
            x ^= np.where(hit, pre, 0)
            residue ^= np.where(hit, vec, 0)
        return x, residue == 0


def linear_map_from_function(ctx: FieldCtx, fn) -> GF2LinearMap:
    return GF2LinearMap([fn(1 << i) for i in range(ctx.m)])


@lru_cache(maxsize=None)
def artin_schreier_map(ctx: FieldCtx, r: int) -> GF2LinearMap:
    """The linear map x -> x^(2^r) + x."""
    return linear_map_from_function(ctx, lambda x: ctx.frob(x, r) ^ x)


def solve_artin_schreier(ctx: FieldCtx, r: int, d: int) -> int | None:
    """Root of x^(2^r) + x = d, or None when trace(d) = 1.

    Of the two roots beta and beta + 1 the smaller encoding is returned.
    """
    if math.gcd(r, ctx.m) != 1:
        raise ParameterError(f"Artin-Schreier solver needs gcd(r, m) = 1, got r={r}, m={ctx.m}")
    if ctx.trace(d):
        return None
    beta = artin_schreier_map(ctx, r).solve(d)
    if beta is None:  # trace 0 but outside the image would contradict Hilbert 90
        raise AssertionError(f"trace-zero element {d:#x} has no Artin-Schreier root")
    return beta & ~1
