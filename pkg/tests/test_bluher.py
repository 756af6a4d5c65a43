import random

import numpy as np
import pytest

from apn_horizon.bluher import (
    Path,
    bluher_set_for,
    build_bluher_set,
    has_zero_fast,
    has_zero_fast_batch,
    is_permutation_L,
    path_name,
    projective_A,
    projective_has_root,
    projective_rootless_table,
    u_equation_has_root,
)
from apn_horizon.errors import ParameterError
from apn_horizon.family import FamilyParams, count_zeros_P, count_zeros_batch, window_rs
from apn_horizon.field import FieldCtx, get_field
from apn_horizon.subfield import build as build_view
from oracles import SlowField


def _in_window_cases(max_m):
    return [(m, r) for m in range(4, max_m + 1, 2) for r in window_rs(m)]


@pytest.mark.parametrize("m,r", _in_window_cases(10))
def test_bluher_set_is_exactly_the_rootless_A(m, r, views):
    view = views[m]
    bset = bluher_set_for(view, r)
    assert np.array_equal(bset.membership, projective_rootless_table(view.ctx, r))
    assert 0 not in bset


def test_rootless_table_matches_oracle(fields):
    ctx = fields[6]
    sf = SlowField(6, ctx.modulus)
    table = projective_rootless_table(ctx, 1)
    for A in range(ctx.size):
        assert table[A] == (not sf.projective_roots(1, A))


@pytest.mark.parametrize("m", [2, 4, 6, 8, 10, 12, 14, 16])
def test_r1_specialization(m, views):
    view = views[m]
    ctx = view.ctx
    xs = ctx.elements()
    non_cubes = xs[~view.vis_cube(xs)]
    expected = np.unique(non_cubes ^ ctx.vinv(non_cubes))
    bset = build_bluher_set(ctx, view, 1)
    assert np.array_equal(bset.members(), expected)
    assert len(bset) == ctx.order // 3


def test_bluher_set_needs_coprime_r(views):
    with pytest.raises(ParameterError):
        build_bluher_set(views[8].ctx, views[8], 2)


def test_projective_examples(fields):
    ctx = fields[4]
    assert projective_has_root(ctx, 0, 1) == (True, 0)
    # x^3 + x + 1 over GF(16): x = 1 gives 1, so look at the full scan
    found, root = projective_has_root(ctx, 1, 1)
    sf = SlowField(4, ctx.modulus)
    roots = sf.projective_roots(1, 1)
    assert found == bool(roots)
    assert root == (roots[0] if roots else None)


@pytest.mark.parametrize("m,r", _in_window_cases(10))
def test_linearized_permutation_iff_rootless(m, r, fields):
    ctx = fields[m]
    table = projective_rootless_table(ctx, r)
    As = range(ctx.size) if m <= 8 else random.Random(m + r).sample(range(ctx.size), 300)
    for A in As:
        assert is_permutation_L(ctx, A, r) == bool(table[A])


def test_projective_A_degenerate_and_factor(views):
    view = views[8]
    ctx = view.ctx
    r = 1
    b, c = 5, 9
    for u in view.mu_list:
        den = ctx.mul(u, ctx.pow(c, 1)) ^ ctx.frob(b, r)
        A = projective_A(ctx, r, b, c, u)
        assert (A is None) == (den == 0)
    # u b = c forces A = 0
    u = view.mu_list[3]
    c = ctx.mul(u, b)
    assert projective_A(ctx, r, b, c, u) == 0


def test_factor_shortcut_path(views):
    view = views[8]
    ctx = view.ctx
    b = 7
    c = ctx.mul(view.mu_list[0], b)  # u = 1 is the first root of unity
    params = FamilyParams(8, 1, b, c, ctx)
    v = has_zero_fast(params, view, bluher_set_for(view, 1))
    assert v.has_zero and v.witness_u == 1 and v.path == Path.FACTOR_SHORTCUT
    assert u_equation_has_root(ctx, 1, b, c, 1)
    assert count_zeros_P(params).count > 0


def test_has_zero_fast_rejects_c0_and_mismatch(views):
    view = views[8]
    with pytest.raises(ParameterError):
        has_zero_fast(FamilyParams(8, 1, 1, 0), view, bluher_set_for(view, 1))
    with pytest.raises(ParameterError):
        has_zero_fast(FamilyParams(8, 3, 1, 1), view, bluher_set_for(view, 1))
    with pytest.raises(ParameterError):
        has_zero_fast_batch(view.ctx, view, bluher_set_for(view, 1), 1, [1], [0])


@pytest.mark.parametrize("m,r", [(4, 1), (6, 1), (8, 1), (8, 3)])
def test_fast_path_matches_direct_exhaustively(m, r, views):
    view = views[m]
    ctx = view.ctx
    bset = bluher_set_for(view, r)
    bs, cs = np.divmod(np.arange(ctx.size, ctx.size * ctx.size), ctx.size)
    keep = cs != 0
    bs, cs = bs[keep], cs[keep]
    fast, witness, codes = has_zero_fast_batch(ctx, view, bset, r, bs, cs)
    direct = count_zeros_batch(ctx, r, bs, cs) > 0
    assert np.array_equal(fast, direct)
    assert np.all((witness != 0) == fast)
    assert set(np.unique(codes[fast])) <= {1, 2, 3}
    assert np.all(codes[~fast] == 0)


@pytest.mark.parametrize("m,r", [(10, 1), (10, 3), (12, 1), (12, 5)])
def test_fast_path_matches_direct_sampled(m, r, views):
    view = views[m]
    ctx = view.ctx
    rng = np.random.default_rng(m * 100 + r)
    bs = rng.integers(0, ctx.size, 10_000)
    cs = rng.integers(1, ctx.size, 10_000)
    fast, _, _ = has_zero_fast_batch(ctx, view, bluher_set_for(view, r), r, bs, cs)
    direct = count_zeros_batch(ctx, r, bs, cs) > 0
    assert np.array_equal(fast, direct)


def test_scalar_fast_path_matches_batch(views):
    view = views[8]
    ctx = view.ctx
    bset = bluher_set_for(view, 3)
    rng = random.Random(5)
    pairs = [(rng.randrange(256), rng.randrange(1, 256)) for _ in range(300)]
    bs, cs = np.array(pairs).T
    fast, witness, codes = has_zero_fast_batch(ctx, view, bset, 3, bs, cs)
    for i, (b, c) in enumerate(pairs):
        v = has_zero_fast(FamilyParams(8, 3, b, c, ctx), view, bset)
        assert v.has_zero == fast[i]
        assert (v.witness_u or 0) == witness[i]
        assert v.path == path_name(codes[i])


def test_table_free_fallback_matches(views):
    ctx = FieldCtx.build(6, table_cap=1)
    view = build_view(ctx)
    bset = build_bluher_set(ctx, view, 1)
    ref_bset = bluher_set_for(views[6], 1)
    assert np.array_equal(bset.membership, ref_bset.membership)
    bs = np.arange(64).repeat(8)
    cs = np.tile(np.arange(1, 9), 64)
    a = has_zero_fast_batch(ctx, view, bset, 1, bs, cs)
    b = has_zero_fast_batch(get_field(6), views[6], ref_bset, 1, bs, cs)
    for x, y in zip(a, b):
        assert np.array_equal(x, y)
