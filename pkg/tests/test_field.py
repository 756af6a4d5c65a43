import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from apn_horizon.errors import DomainError, ParameterError
from apn_horizon.field import (
    FieldCtx,
    arith,
    clmul,
    find_irreducible,
    fmt_hex,
    get_field,
    is_irreducible,
    parse_hex,
    solve_artin_schreier,
)
from oracles import SlowField, irreducible_by_trial_division, smallest_irreducible

# smallest irreducible per degree, frozen from the trial-division oracle
SMALLEST = {2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11B, 9: 0x203, 10: 0x409}


@pytest.mark.parametrize("m", sorted(SMALLEST))
def test_find_irreducible_matches_trial_division(m):
    assert SMALLEST[m] == smallest_irreducible(m)
    assert find_irreducible(m) == SMALLEST[m]


def test_find_irreducible_m8_frobenius_conditions():
    ctx = get_field(8)
    z = 2
    assert ctx.frob(z, 8) == z
    assert ctx.frob(z, 4) != z


def test_rabin_agrees_with_trial_division():
    for f in range(4, 1 << 11):
        assert is_irreducible(f) == irreducible_by_trial_division(f), hex(f)


def test_reducible_product_passing_weak_test_is_rejected():
    # z (z^2+z+1)(z^3+z+1): factor degrees 1, 2, 3 all divide 6
    f = clmul(clmul(0b10, 0b111), 0b1011)
    assert f.bit_length() - 1 == 6
    assert not is_irreducible(f)


def test_find_irreducible_rejects_small_m():
    with pytest.raises(ParameterError):
        find_irreducible(1)


def test_modulus_override_is_validated():
    with pytest.raises(ParameterError):
        FieldCtx.build(4, 0b10101)  # (z^2+z+1)^2
    ctx = FieldCtx.build(4, 0b11001)
    assert ctx.modulus == 0x19


def test_hex_round_trip():
    assert parse_hex(fmt_hex(0x11B)) == 0x11B
    assert parse_hex("1b") == 0x1B


def test_m2_multiplication_example():
    ctx = get_field(2)
    assert ctx.mul(2, 3) == 1
    assert arith(ctx, "mul", 2, 3) == 1


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 7, 8])
def test_generator_has_full_order(m):
    ctx = get_field(m)
    seen = {1}
    x = 1
    for _ in range(ctx.order - 1):
        x = ctx.mul_schoolbook(x, ctx.generator)
        seen.add(x)
    assert len(seen) == ctx.order


@pytest.mark.parametrize("m", [2, 4, 5, 6, 8])
def test_field_axioms_exhaustive(m):
    ctx = get_field(m)
    xs = ctx.elements()
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    prod = ctx.vmul(X, Y)
    assert np.array_equal(prod, prod.T)
    assert np.all((X ^ X) == 0)
    # associativity and distributivity on every triple for m <= 5, a full slice otherwise
    zs = xs if m <= 5 else xs[::17]
    for z in zs:
        assert np.array_equal(ctx.vmul(prod, z), ctx.vmul(X, ctx.vmul(Y, z)))
        assert np.array_equal(ctx.vmul(X ^ Y, z), ctx.vmul(X, z) ^ ctx.vmul(Y, z))


@pytest.mark.parametrize("m", [2, 3, 4, 6, 8])
def test_log_table_path_matches_schoolbook(m):
    ctx = get_field(m)
    table_free = FieldCtx.build(m, table_cap=1)
    assert not table_free.log_tables_present
    xs = ctx.elements()
    X, Y = np.meshgrid(xs, xs, indexing="ij")
    assert np.array_equal(ctx.vmul(X, Y), table_free.vmul(X, Y))
    sf = SlowField(m, ctx.modulus)
    for x in range(ctx.size):
        for y in range(0, ctx.size, 7):
            assert ctx.mul(x, y) == sf.mul(x, y) == table_free.mul(x, y)


@settings(max_examples=300, deadline=None)
@given(st.integers(10, 22), st.data())
def test_field_laws_sampled(m, data):
    ctx = get_field(m)
    x, y, z = (data.draw(st.integers(0, ctx.size - 1)) for _ in range(3))
    assert ctx.mul(x, y) == ctx.mul_schoolbook(x, y)
    assert ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z))
    assert ctx.mul(x, y ^ z) == ctx.mul(x, y) ^ ctx.mul(x, z)
    assert ctx.trace(x ^ y) == ctx.trace(x) ^ ctx.trace(y)
    assert ctx.trace(ctx.mul(x, x)) == ctx.trace(x)
    assert ctx.frob(x, m) == x
    if x:
        assert ctx.mul(x, ctx.inv(x)) == 1


def test_inverse_of_zero_is_an_error(fields):
    with pytest.raises(DomainError):
        fields[8].inv(0)
    with pytest.raises(DomainError):
        fields[8].vinv(np.array([1, 0]))


@pytest.mark.parametrize("m", [3, 4, 7, 8])
def test_inverse_and_frobenius_exhaustive(m, fields):
    ctx = fields[m]
    for x in range(1, ctx.size):
        assert ctx.mul(x, ctx.inv(x)) == 1
    for x in range(ctx.size):
        assert ctx.frob(x, m) == x
        assert ctx.frob(ctx.frob(x, 3), -3) == x
        assert ctx.sqrt(ctx.mul(x, x)) == x


def test_trace_examples(fields):
    assert fields[2].trace(0) == 0
    assert fields[2].trace(2) == 1
    for m in (2, 4, 6, 8):
        assert fields[m].trace(1) == 0
    assert fields[5].trace(1) == 1


@pytest.mark.parametrize("m", range(2, 13))
def test_trace_balanced_and_mask(m, fields):
    ctx = fields[m]
    xs = ctx.elements()
    traces = ctx.vtrace(xs)
    assert int(traces.sum()) == 1 << (m - 1)
    if m <= 8:
        assert [ctx.trace(int(x)) for x in xs] == list(traces)
        sf = SlowField(m, ctx.modulus)
        assert all(sf.trace(int(x)) == t for x, t in zip(xs, traces))


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 8, 10])
def test_artin_schreier_solver(m, fields):
    ctx = fields[m]
    for r in range(1, m):
        if math.gcd(r, m) != 1:
            with pytest.raises(ParameterError):
                solve_artin_schreier(ctx, r, 0)
            continue
        assert solve_artin_schreier(ctx, r, 0) == 0
        for d in range(ctx.size):
            beta = solve_artin_schreier(ctx, r, d)
            if ctx.trace(d):
                assert beta is None
            else:
                assert ctx.frob(beta, r) ^ beta == d
                assert beta & 1 == 0  # smaller of beta, beta + 1


def test_artin_schreier_vectorized_matches_scalar(fields):
    from apn_horizon.field import artin_schreier_map

    ctx = fields[10]
    lin = artin_schreier_map(ctx, 3)
    ds = ctx.elements()
    xs, ok = lin.vsolve(ds)
    assert np.array_equal(ok, ctx.vtrace(ds) == 0)
    for d in random.Random(3).sample(range(ctx.size), 100):
        assert (lin.solve(d) is not None) == bool(ok[d])
        if ok[d]:
            assert lin.solve(d) == xs[d]


def test_arith_rejects_unknown_op(fields):
    with pytest.raises(ParameterError):
        arith(fields[4], "sub", 1, 2)
