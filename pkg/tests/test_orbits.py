import random

import numpy as np
import pytest

from apn_horizon.errors import ParameterError
from apn_horizon.family import FamilyParams, count_zeros_P, count_zeros_batch, window_rs
from apn_horizon.orbits import act_on_pair, orbit_of_b, pair_orbit_count, partition
from oracles import orbit_closure


def _group(view):
    return [(u, k) for u in view.mu_list for k in range(view.ctx.m)]


def test_identity_and_fixed_zero(views):
    view = views[6]
    for b, c in [(0, 0), (5, 9), (63, 1)]:
        assert act_on_pair(view, b, c, 1, 0, 1) == (b, c)
    for u, k in _group(view):
        assert act_on_pair(view, 0, 0, u, k, 1) == (0, 0)


def test_act_rejects_non_root(views):
    with pytest.raises(ParameterError):
        act_on_pair(views[4], 1, 1, 2, 0, 1)


def test_action_composes(views):
    view = views[6]
    ctx = view.ctx
    rng = random.Random(1)
    for _ in range(50):
        b, c = rng.randrange(64), rng.randrange(64)
        (u1, k1), (u2, k2) = rng.choice(_group(view)), rng.choice(_group(view))
        step = act_on_pair(view, *act_on_pair(view, b, c, u1, k1, 1), u2, k2, 1)
        # (u2, k2) after (u1, k1) equals (u1 u2^(2^-k1), k1 + k2)
        u = ctx.mul(u1, ctx.frob(u2, -k1))
        assert step == act_on_pair(view, b, c, u, k1 + k2, 1)


@pytest.mark.parametrize("m,r", [(4, 1), (6, 1), (8, 3)])
def test_zero_count_invariant(m, r, views):
    view = views[m]
    ctx = view.ctx
    rng = random.Random(m)
    for _ in range(30):
        b, c = rng.randrange(ctx.size), rng.randrange(ctx.size)
        base = count_zeros_P(FamilyParams(m, r, b, c, ctx)).count
        images = [act_on_pair(view, b, c, u, k, r) for u, k in rng.sample(_group(view), 8)]
        bs, cs = np.array(images).T
        assert np.all(count_zeros_batch(ctx, r, bs, cs) == base)


@pytest.mark.parametrize("m", [4, 6, 8, 10])
def test_partition_laws(m, views):
    view = views[m]
    ctx = view.ctx
    part = partition(ctx, view, 1)
    assert np.all(part.class_of >= 0)
    assert sum(part.class_sizes.values()) == ctx.size
    assert part.representatives == sorted(part.representatives)
    for rep in part.representatives:
        members = part.members(rep)
        assert members[0] == rep
        assert members.size == part.class_sizes[rep]
        assert np.array_equal(members, orbit_of_b(view, rep, 1))


@pytest.mark.parametrize("m", [4, 6])
def test_partition_matches_brute_force_closure(m, views):
    view = views[m]
    ctx = view.ctx
    group = _group(view)
    part = partition(ctx, view, 1)

    def step(b):
        return {act_on_pair(view, b, 0, u, k, 1)[0] for u, k in group}

    seen: set[int] = set()
    reps = []
    for b in range(ctx.size):
        if b not in seen:
            cls = orbit_closure(step, b)
            seen |= cls
            reps.append(b)
            assert sorted(cls) == list(part.members(b))
    assert reps == part.representatives


def test_class_counts(views):
    assert len(partition(views[4].ctx, views[4], 1)) == 3
    view = views[16]
    assert len(partition(view.ctx, view, 1)) == 36


def test_classes_independent_of_r(views):
    view = views[16]
    ref = partition(view.ctx, view, 1)
    for r in window_rs(16)[1:]:
        assert np.array_equal(partition(view.ctx, view, r).class_of, ref.class_of)


@pytest.mark.parametrize("m,r", [(4, 1), (6, 1), (8, 1), (8, 3)])
def test_class_of_respected_by_action(m, r, views):
    view = views[m]
    part = partition(view.ctx, view, r)
    rng = random.Random(m * r)
    for _ in range(100):
        b = rng.randrange(view.ctx.size)
        u, k = rng.choice(_group(view))
        b2, _ = act_on_pair(view, b, 1, u, k, r)
        assert part.class_of[b2] == part.class_of[b]


@pytest.mark.parametrize("m,r", [(4, 1), (6, 1)])
def test_pair_orbit_count_matches_brute_force(m, r, views):
    view = views[m]
    ctx = view.ctx
    group = _group(view)

    def step(pair):
        return {act_on_pair(view, *pair, u, k, r) for u, k in group}

    seen: set = set()
    orbits = 0
    for b in range(ctx.size):
        for c in range(1, ctx.size):
            if (b, c) not in seen:
                seen |= orbit_closure(step, (b, c))
                orbits += 1
    assert pair_orbit_count(ctx, view, r) == orbits


@pytest.mark.parametrize("m,r", [(4, 1), (6, 1)])
def test_reduction_is_sound(m, r, views):
    # every pair is zero-free iff its image with b replaced by its class representative is
    view = views[m]
    ctx = view.ctx
    bs, cs = np.divmod(np.arange(ctx.size ** 2), ctx.size)
    counts = count_zeros_batch(ctx, r, bs, cs).reshape(ctx.size, ctx.size)
    part = partition(ctx, view, r)
    group = _group(view)
    for b in range(ctx.size):
        rep = int(part.class_of[b])
        u, k = next((u, k) for u, k in group if act_on_pair(view, b, 0, u, k, r)[0] == rep)
        for c in range(ctx.size):
            b2, c2 = act_on_pair(view, b, c, u, k, r)
            assert b2 == rep
            assert counts[b2, c2] == counts[b, c]
