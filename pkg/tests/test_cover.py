from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latcover.cover import (
    NU_STEP,
    build_cover,
    build_D_alpha,
    choose_alpha,
    f_count,
    mahler_products,
    nu_from_mu,
    pigeonhole_collision,
    polar_minima,
    theorem2_bound,
    uncovered_points,
    witness_support_ok,
)
from latcover.errors import HypothesisViolated, InvalidNu, UnsupportedFamily
from latcover.exact import GaugeValue
from latcover.geometry import Body
from latcover.lattice import enumerate_points, successive_minima

from test_geometry import bodies


def _meets(f, nu, k):
    prod = 1
    for v in nu:
        prod *= v
    return f ** (k - 1) >= 16 ** (k - 1) * k**k * prod


def test_choose_alpha_worked_example():
    nu = (Fraction(4), 4 + NU_STEP)
    alpha, f = choose_alpha(nu, 1, 2)
    # f jumps to 32*32 = 1024 at 31*nu_2, still below 64*nu_1*nu_2; the next jump is 128
    assert alpha == 128 and f == 33 * 32
    assert not _meets(f_count(alpha - Fraction(1, 10**9), nu), nu, 2)


@given(
    st.lists(st.fractions(1, 20, max_denominator=8), min_size=2, max_size=4, unique=True),
)
def test_choose_alpha_is_minimal(raw):
    nu = tuple(sorted(raw))
    k = len(nu)
    n = k + 1  # m = 2
    if k < 2 or nu[0] * nu[1] < 1:
        return
    prod = 1
    for v in nu:
        prod *= v
    if prod < 1:
        return
    alpha, f = choose_alpha(nu, 2, n)
    assert f == f_count(alpha, nu) and _meets(f, nu, k)
    assert not _meets(f_count(alpha - Fraction(1, 10**6), nu), nu, k)
    assert f > 2 * k * alpha + 1 and 4 * k * alpha <= f and f >= 32


@pytest.mark.parametrize(
    "nu, m, n",
    [((2, 1), 1, 2), ((1, 1), 1, 2), ((0, 1), 1, 2), ((1, 2), 1, 3), ((Fraction(1, 4), Fraction(1, 2)), 1, 2), ((1, 2), 2, 2)],
)
def test_choose_alpha_rejects(nu, m, n):
    with pytest.raises(InvalidNu):
        choose_alpha(nu, m, n)


def test_build_D_alpha_unit_box():
    d = build_D_alpha([(1, 0), (0, 1)], [1, 2], 2)
    assert sorted(d) == sorted((a, b) for a in (-2, -1, 0, 1, 2) for b in (-1, 0, 1))
    assert len(build_D_alpha([(1, 0), (0, 1)], [3, 3], 3)) == 9
    assert len(build_D_alpha([(1, 0), (0, 1)], [3, 3], 3, nonnegative=True)) == 4


def test_polar_minima_of_slab():
    for x in (2, 5):
        pol = polar_minima(Body.cube_slab(x, 3))
        assert pol.mu == (GaugeValue.rational(1), GaugeValue.rational(x), GaugeValue.rational(x))
        assert pol.witnesses[0] in ((0, 0, 1), (0, 0, -1))


def test_nu_from_mu_strictly_above():
    mu = (GaugeValue.rational(1), GaugeValue.rational(1), GaugeValue.sqrt(2))
    nu = nu_from_mu(mu, 3)
    assert all(v > m for v, m in zip(nu, mu))
    assert nu[0] < nu[1] < nu[2]


@pytest.mark.parametrize(
    "body",
    [Body.ball(r, n) for n in (2, 3) for r in (2, 4, 8)] + [Body.cross_slab(5, 3), Body.ellipsoid([[Fraction(1, 9), 0], [0, Fraction(1, 4)]])],
    ids=str,
)
def test_cover_covers_and_respects_bounds(body):
    fam = build_cover(body)
    pts = [x for x in enumerate_points(body) if any(x)]
    for u in pts:
        assert any(h.contains(u) for h in fam.hyperplanes)
    k, a, f = fam.k, fam.alpha, fam.f_alpha
    assert f > 2 * k * a + 1 and 4 * k * a <= f and 32 <= f
    assert fam.size <= fam.size_bound == 2**k * f
    assert witness_support_ok(body, fam, polar_minima(body))


def test_pigeonhole_replay():
    body = Body.ball(4, 3)
    fam = build_cover(body, m=1)
    d_plus = build_D_alpha(fam.witnesses, fam.nu, fam.alpha, nonnegative=True)
    assert len(d_plus) == fam.f_alpha
    for u in enumerate_points(body):
        if not any(u):
            continue
        dots = [sum(a * b for a, b in zip(u, v)) for v in d_plus]
        assert max(abs(s) for s in dots) <= fam.k * fam.alpha
        a, b = pigeonhole_collision(u, d_plus)
        diff = tuple(x - y for x, y in zip(a, b))
        assert any(diff) and sum(x * y for x, y in zip(u, diff)) == 0


def test_auto_picks_smallest():
    body = Body.ball(3, 3)
    sizes = {m: build_cover(body, m=m).size for m in (1, 2)}
    auto = build_cover(body)
    assert auto.size == min(sizes.values())
    assert auto.m == min(m for m, s in sizes.items() if s == auto.size)


def test_cover_rejects():
    with pytest.raises(UnsupportedFamily):
        build_cover(Body.hpolytope([[1, 0], [0, 1], [1, 1]], [3, 3, 3]))
    with pytest.raises(HypothesisViolated):
        build_cover(Body.box([Fraction(1, 2), 3]))
    with pytest.raises(ValueError):
        build_cover(Body.ball(2, 2), m=2)


def test_uncovered_points():
    pts = [(1, 0), (0, 1), (1, 1)]
    assert uncovered_points(pts, [(0, 1)]) == [(0, 1), (1, 1)]
    assert uncovered_points(pts, []) == pts
    big = [(10**12, 1)]
    assert uncovered_points(big, [(1, -(10**12))]) == []


@settings(max_examples=30)
@given(bodies(dims=(2, 3)))
def test_mahler_products_at_least_one(body):
    prof = successive_minima(body)
    prods = mahler_products(prof, polar_minima(body))
    assert all(p >= 1 for p in prods)


def test_cover_bound_on_slab():
    for x in (2, 7):
        rep = theorem2_bound(successive_minima(Body.cube_slab(x, 3)))
        assert rep.min_term == (x, x)
    with pytest.raises(HypothesisViolated):
        theorem2_bound(successive_minima(Body.box([Fraction(1, 2), 3])))
