import itertools
import random
from fractions import Fraction

import pytest

from latcover.cover import build_cover
from latcover.errors import InstanceTooLarge, SandwichViolation
from latcover.genpos import build_general_position, verify_general_position
from latcover.geometry import Body
from latcover.lattice import canonical_normal, enumerate_points
from latcover.oracle import _max_general_position, _set_cover, check_sandwich, exact_g, exact_h


def _covers(witness, body):
    return all(any(h.contains(x) for h in witness) for x in enumerate_points(body))


def test_examples():
    assert exact_g(Body.ball(2, 2)).value == 4
    assert exact_h(Body.ball(2, 2)).value == 4
    assert exact_g(Body.cross_slab(5, 3)).value == 2
    assert exact_h(Body.cross_slab(5, 3)).value == 3
    assert exact_g(Body.cube_slab(3, 2)).value >= 6
    assert exact_h(Body.cube_slab(4, 2)).value >= 2


@pytest.mark.parametrize("x", [2, 3, 4])
def test_planar_slab_bounds(x):
    body = Body.cube_slab(x, 2)
    assert exact_g(body).value >= 2 * x
    assert 2 * exact_h(body).value >= x


@pytest.mark.parametrize("x", [2, 3, 4])
def test_slab_n3_g_bound(x):
    res = exact_g(Body.cube_slab(x, 3))
    assert res.value >= 2 * x
    assert _covers(res.witness, Body.cube_slab(x, 3))


def test_slab_n3_h_exact_small():
    body = Body.cube_slab(2, 3)
    h = exact_h(body)
    assert h.value == 11 and verify_general_position(h.witness, 3)
    assert h.value <= 2 * exact_g(body).value


@pytest.mark.parametrize("x", [3, 4])
def test_slab_n3_h_lower_bound(x):
    # the exact search is slow here; any verified general-position subset bounds h from below
    body = Body.cube_slab(x, 3)
    chosen = []
    for p in enumerate_points(body):
        if any(p) and verify_general_position(chosen + [p], 3):
            chosen.append(p)
    assert 2 * len(chosen) >= x
    assert len(chosen) <= 2 * exact_g(body).value


@pytest.mark.parametrize(
    "body",
    [Body.ball(1, 2), Body.ball(3, 2), Body.ball(2, 3), Body.box([2, 1, 1]), Body.cross_polytope([3, 2, 1])],
    ids=str,
)
def test_witnesses_are_valid(body):
    g = exact_g(body)
    assert len(g.witness) == g.value and _covers(g.witness, body)
    h = exact_h(body)
    assert len(h.witness) == h.value and verify_general_position(h.witness, body.dim)
    assert h.value <= (body.dim - 1) * g.value


def test_degenerate_bodies():
    flat = Body.box([3, Fraction(1, 2)])  # all points on the x-axis
    assert exact_g(flat).value == 1
    assert exact_h(flat).value == 1
    tiny = Body.ball(Fraction(1, 2), 3)  # only the origin
    assert exact_g(tiny).value == 1
    assert exact_h(tiny).value == 1


def test_set_cover_matches_exhaustive():
    rng = random.Random(5)
    for _ in range(30):
        universe_size = rng.randint(3, 9)
        sets = [rng.getrandbits(universe_size) for _ in range(rng.randint(3, 8))]
        universe = 0
        for s in sets:
            universe |= s
        if not universe:
            continue
        got = _set_cover(universe, sets)
        best = min(
            k
            for k in range(1, len(sets) + 1)
            for combo in itertools.combinations(sets, k)
            if _or(combo) == universe
        )
        assert len(got) == best and _or([sets[i] for i in got]) == universe


def _or(masks):
    out = 0
    for m in masks:
        out |= m
    return out


def test_general_position_search_matches_exhaustive():
    dirs = sorted({canonical_normal(x) for x in enumerate_points(Body.box([1, 1, 1])) if any(x)})
    cover = [h.normal for h in exact_g(Body.box([1, 1, 1])).witness]
    best = _max_general_position(dirs, 3, cover)
    for k in range(len(best) + 1, len(dirs) + 1):
        assert not any(verify_general_position(c, 3) for c in itertools.combinations(dirs, k))
    assert verify_general_position(best, 3)


def test_cap_is_enforced():
    with pytest.raises(InstanceTooLarge):
        exact_g(Body.ball(30, 2), cap=100)


def test_sandwich_with_constructions():
    body = Body.ball(25, 2)
    rep = check_sandwich(body, build_general_position(body), build_cover(body))
    assert rep.certificate_size <= rep.h <= rep.g <= rep.cover_size


def test_sandwich_detects_fake_cover():
    class Fake:
        size = 1

    with pytest.raises(SandwichViolation):
        check_sandwich(Body.ball(2, 2), cover=Fake())


def test_deterministic():
    body = Body.ball(2, 3)
    assert exact_g(body) == exact_g(body)
    assert exact_h(body) == exact_h(body)
