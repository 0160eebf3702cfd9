import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from latcover.errors import InvalidBody, NonUnimodular, UnsupportedFamily
from latcover.exact import GaugeKind, GaugeValue
from latcover.geometry import (
    Body,
    Family,
    body_from_dict,
    body_to_dict,
    bounding_box,
    contains,
    gauge,
    load_body,
    support,
    transform,
)
from latcover.lattice import enumerate_points, successive_minima

small = st.fractions(min_value=Fraction(1, 3), max_value=6, max_denominator=6)
coords = st.integers(-12, 12)


@st.composite
def bodies(draw, dims=(2, 3)):
    n = draw(st.sampled_from(dims))
    kind = draw(st.sampled_from(["ball", "box", "cross", "ellipsoid"]))
    if kind == "ball":
        return Body.ball(draw(small), n)
    if kind == "box":
        return Body.box(draw(st.lists(small, min_size=n, max_size=n)))
    if kind == "cross":
        return Body.cross_polytope(draw(st.lists(small, min_size=n, max_size=n)))
    # diagonally dominant, hence positive definite
    off = draw(st.lists(st.fractions(-1, 1, max_denominator=4), min_size=n * n, max_size=n * n))
    a = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            a[i][j] = a[j][i] = off[i * n + j]
    for i in range(n):
        a[i][i] = sum(abs(x) for x in a[i]) + draw(small)
    return Body.ellipsoid(a)


def vec(n):
    return st.lists(coords, min_size=n, max_size=n)


# -- worked examples ----------------------------------------------------------


def test_gauge_examples():
    assert gauge(Body.box([1, 1]), (3, 4)) == 4
    g = gauge(Body.ball(2, 2), (1, 1))
    assert g.kind is GaugeKind.SQRT_RATIONAL and g.square == Fraction(1, 2)
    assert gauge(Body.cross_polytope([5, 5, 1]), (1, 1, 0)) == Fraction(2, 5)


def test_support_examples():
    assert support(Body.ball(4, 2), (1, 0)).square == 16
    assert support(Body.box([2, 1]), (1, 1)) == 3
    assert support(Body.cross_polytope([5, 5, 1]), (0, 0, 3)) == 3


def test_bounding_box_examples():
    assert bounding_box(Body.ball(2, 2), 1) == (2, 2)
    assert bounding_box(Body.box([5, 1]), 1) == (5, 1)
    assert bounding_box(Body.ball(2, 2), Fraction(1, 2)) == (1, 1)


def test_transform_identity_ball_is_ellipsoid():
    body = transform(Body.ball(1, 2), [[1, 0], [0, 1]])
    assert body.family is Family.ELLIPSOID
    assert body.params == ((1, 0), (0, 1))


def test_transform_shear_box_keeps_minima():
    box = Body.box([1, 1])
    sheared = transform(box, [[1, 1], [0, 1]])
    assert sheared.family is Family.HPOLYTOPE
    assert successive_minima(sheared).minima == successive_minima(box).minima


def test_transform_rejects_non_unimodular():
    with pytest.raises(NonUnimodular):
        transform(Body.ball(1, 2), [[2, 0], [0, 1]])


# -- validation -----------------------------------------------------------------


@pytest.mark.parametrize(
    "make",
    [
        lambda: Body.ball(0, 2),
        lambda: Body.ball(1, 9),
        lambda: Body.box([1, -1]),
        lambda: Body.ellipsoid([[1, 2], [2, 1]]),
        lambda: Body.ellipsoid([[1, 0], [1, 1]]),
        lambda: Body.hpolytope([[1, 0]], [1]),
    ],
)
def test_invalid_bodies(make):
    with pytest.raises(InvalidBody):
        make()


def test_hpolytope_has_no_polar():
    body = Body.hpolytope([[1, 0], [0, 1], [1, 1]], [1, 1, 1])
    with pytest.raises(UnsupportedFamily):
        body.polar()
    with pytest.raises(UnsupportedFamily):
        support(body, (1, 0))


def test_descriptor_round_trip(tmp_path):
    for body in [
        Body.ball(Fraction(5, 2), 3),
        Body.box([1, Fraction(3, 2)]),
        Body.cross_polytope([2, 3]),
        Body.ellipsoid([[2, 1], [1, 2]]),
        Body.hpolytope([[1, 0], [0, 1], [1, 1]], [2, 2, 3]),
    ]:
        assert body_from_dict(json.loads(json.dumps(body_to_dict(body)))) == body
    path = tmp_path / "b.json"
    path.write_text('{"family": "ball", "dim": 2, "params": {"radius": "1/2"}}')
    assert load_body(path) == Body.ball(Fraction(1, 2), 2)
    path.write_text("{nope")
    with pytest.raises(InvalidBody):
        load_body(path)
    with pytest.raises(InvalidBody):
        body_from_dict({"family": "ball", "dim": 3, "params": {}})


# -- properties -----------------------------------------------------------------


@given(bodies(), st.data())
def test_gauge_subadditive_and_symmetric(body, data):
    x = data.draw(vec(body.dim))
    y = data.draw(vec(body.dim))
    gx, gy = gauge(body, x), gauge(body, y)
    s = tuple(a + b for a, b in zip(x, y))
    # g(x+y) <= g(x) + g(y)  <=>  g(x+y)^2 - g(x)^2 - g(y)^2 <= 2 g(x) g(y)
    lhs = gauge(body, s).square - gx.square - gy.square
    cross = (gx * gy).square
    assert lhs <= 0 or lhs * lhs <= 4 * cross
    assert gauge(body, tuple(-a for a in x)) == gx


@given(bodies(), st.data(), st.integers(-5, 5))
def test_gauge_homogeneous(body, data, t):
    x = data.draw(vec(body.dim))
    assert gauge(body, tuple(t * a for a in x)).square == t * t * gauge(body, x).square


@given(bodies(), st.data())
def test_support_times_gauge_dominates_dot(body, data):
    x = data.draw(vec(body.dim))
    dot = sum(a * a for a in x)
    prod = support(body, x) * gauge(body, x)
    assert prod.square >= dot * dot
    if body.family is Family.BALL:
        assert prod.square == dot * dot


def _vertices(body):
    n = body.dim
    if body.family is Family.BOX:
        return [tuple(s * h for s, h in zip(signs, body.params)) for signs in itertools.product((-1, 1), repeat=n)]
    return [tuple(s * body.params[i] if j == i else 0 for j in range(n)) for i in range(n) for s in (-1, 1)]


@given(st.sampled_from([2, 3]).flatmap(lambda n: st.tuples(st.lists(small, min_size=n, max_size=n), vec(n))), st.booleans())
def test_support_matches_vertex_maximum(args, is_box):
    params, x = args
    body = Body.box(params) if is_box else Body.cross_polytope(params)
    best = max(sum(a * b for a, b in zip(v, x)) for v in _vertices(body))
    assert support(body, x) == best


@given(bodies(dims=(2,)), st.data())
def test_ellipsoid_support_attained(body, data):
    """For an ellipsoid the maximiser A^-1 x / sqrt(x^T A^-1 x) lies on the boundary."""
    if body.family is not Family.ELLIPSOID:
        return
    x = data.draw(vec(2).filter(any))
    inv = body._inverse
    y = [sum(inv[i][j] * x[j] for j in range(2)) for i in range(2)]
    q = sum(a * b for a, b in zip(x, y))
    # gauge(y / sqrt(q)) = 1  <=>  y^T A y = q
    a = body.params
    assert sum(y[i] * a[i][j] * y[j] for i in range(2) for j in range(2)) == q
    assert support(body, x).square == q


@given(bodies(), st.data())
def test_polar_gauge_is_support(body, data):
    x = data.draw(vec(body.dim))
    assert gauge(body.polar(), x) == support(body, x)


@given(bodies(), st.data())
def test_membership_monotone(body, data):
    x = data.draw(vec(body.dim))
    t = data.draw(small)
    t2 = t + data.draw(small)
    if contains(body, x, t):
        assert contains(body, x, t2)
    assert body.member_test(t)(x) == contains(body, x, t)


@given(bodies(dims=(2,)), st.sampled_from([
    [[1, 0], [0, 1]],
    [[1, 1], [0, 1]],
    [[2, 1], [1, 1]],
    [[0, 1], [-1, 0]],
    [[1, -2], [0, -1]],
]))
def test_transform_preserves_minima(body, u):
    before = successive_minima(body).minima
    after = successive_minima(transform(body, u)).minima
    assert after == before


def test_negation_keeps_point_set():
    body = Body.cross_polytope([3, 2])
    flipped = transform(body, [[-1, 0], [0, -1]])
    assert enumerate_points(flipped) == enumerate_points(body)
