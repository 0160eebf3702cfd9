"""Origin-symmetric convex bodies with exact gauge and support functions.

Five families are supported::

    ball            {x : |x| <= r}
    ellipsoid       {x : x^T A x <= 1}, A symmetric positive definite
    box             {x : |x_i| <= h_i}
    crosspolytope   conv{+-s_i e_i}
    hpolytope       {x : |a_i . x| <= b_i for every row i}

All parameters are exact rationals.  Membership of integer points in a dilate
``t*C`` is decided with integer arithmetic after clearing denominators; the
public :func:`gauge` returns a :class:`~latcover.exact.GaugeValue`.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Sequence

from .errors import DimensionMismatch, InvalidBody, NonUnimodular, UnsupportedFamily
from .exact import (
    GaugeValue,
    bareiss_det,
    floor_sqrt,
    format_fraction,
    lcm_all,
    rank,
    to_fraction,
)

MAX_DIM = 8

Vector = Sequence[Any]


class Family(str, enum.Enum):
    BALL = "ball"
    ELLIPSOID = "ellipsoid"
    BOX = "box"
    CROSSPOLYTOPE = "crosspolytope"
    HPOLYTOPE = "hpolytope"


# ---------------------------------------------------------------------------
# small exact linear algebra on Fraction matrices


def _mat_inverse(a: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def _is_positive_definite(a: Sequence[Sequence[Fraction]]) -> bool:
    # Sylvester: all leading principal minors positive (exact via Fractions)
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    for k in range(n):
        if m[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return True


def _quad(a: Sequence[Sequence[Fraction]], x: Vector) -> Fraction:
    return sum((a[i][j] * x[i] * x[j] for i in range(len(x)) for j in range(len(x))), Fraction(0))


def _dot(a: Vector, x: Vector):
    return sum(p * q for p, q in zip(a, x))


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class Body:
    """An origin-symmetric convex body given by family and exact parameters.

    Build instances with the classmethod constructors (:meth:`ball`,
    :meth:`box`, ...); they validate and normalise the parameters.
    """

    family: Family
    dim: int
    params: tuple

    def __post_init__(self):
        if not 2 <= self.dim <= MAX_DIM:
            raise InvalidBody(f"dimension must be in [2, {MAX_DIM}], got {self.dim}")

    # -- constructors --------------------------------------------------------

    @classmethod
    def ball(cls, radius, dim: int) -> Body:
        r = to_fraction(radius)
        if r <= 0:
            raise InvalidBody("ball radius must be positive")
        return cls(Family.BALL, dim, (r,))

    @classmethod
    def ellipsoid(cls, matrix: Sequence[Sequence]) -> Body:
        a = tuple(tuple(to_fraction(x) for x in row) for row in matrix)
        n = len(a)
        if any(len(row) != n for row in a):
            raise InvalidBody("ellipsoid matrix must be square")
        if any(a[i][j] != a[j][i] for i in range(n) for j in range(n)):
            raise InvalidBody("ellipsoid matrix must be symmetric")
        if not _is_positive_definite(a):
            raise InvalidBody("ellipsoid matrix must be positive definite")
        return cls(Family.ELLIPSOID, n, a)

    @classmethod
    def box(cls, half_widths: Sequence) -> Body:
        h = tuple(to_fraction(x) for x in half_widths)
        if any(x <= 0 for x in h):
            raise InvalidBody("box half-widths must be positive")
        return cls(Family.BOX, len(h), h)

    @classmethod
    def cross_polytope(cls, scales: Sequence) -> Body:
        s = tuple(to_fraction(x) for x in scales)
        if any(x <= 0 for x in s):
            raise InvalidBody("cross-polytope scales must be positive")
        return cls(Family.CROSSPOLYTOPE, len(s), s)

    @classmethod
    def hpolytope(cls, normals: Sequence[Sequence], bounds: Sequence) -> Body:
        a = tuple(tuple(to_fraction(x) for x in row) for row in normals)
        b = tuple(to_fraction(x) for x in bounds)
        if not a or len(a) != len(b):
            raise InvalidBody("hpolytope needs one bound per row")
        n = len(a[0])
        if any(len(row) != n for row in a):
            raise InvalidBody("hpolytope rows have inconsistent length")
        if any(x <= 0 for x in b):
            raise InvalidBody("hpolytope bounds must be positive")
        if rank(a) < n:
            raise InvalidBody("hpolytope rows do not span R^n; the body is unbounded")
        return cls(Family.HPOLYTOPE, n, (a, b))

    @classmethod
    def cube_slab(cls, x, dim: int) -> Body:
        """The box ``[-x, x]^(n-1) x [-1, 1]``."""
        x = to_fraction(x)
        return cls.box([x] * (dim - 1) + [1])

    @classmethod
    def cross_slab(cls, x, dim: int) -> Body:
        """The cross-polytope ``conv{+-x e_i (i < n), +-e_n}``."""
        x = to_fraction(x)
        return cls.cross_polytope([x] * (dim - 1) + [1])

    # -- derived data ----------------------------------------------------------

    @property
    def supports_polar(self) -> bool:
        return self.family is not Family.HPOLYTOPE

    @cached_property
    def _inverse(self) -> tuple:
        return tuple(tuple(row) for row in _mat_inverse(self.params))

    def polar(self) -> Body:
        """The polar body; its gauge is the support function of ``self``."""
        f = self.family
        if f is Family.BALL:
            return Body.ball(1 / self.params[0], self.dim)
        if f is Family.ELLIPSOID:
            return Body.ellipsoid(self._inverse)
        if f is Family.BOX:
            return Body.cross_polytope([1 / h for h in self.params])
        if f is Family.CROSSPOLYTOPE:
            return Body.box([1 / s for s in self.params])
        raise UnsupportedFamily("the polar of an hpolytope needs exact linear programming")

    @cached_property
    def _integer_form(self):
        """Denominator-free constants used by :meth:`member_test`."""
        f = self.family
        if f is Family.ELLIPSOID:
            d = lcm_all(x.denominator for row in self.params for x in row)
            return d, tuple(tuple(int(x * d) for x in row) for row in self.params)
        if f is Family.CROSSPOLYTOPE:
            p = lcm_all(s.numerator for s in self.params)
            # sum |x_i| / s_i <= t   <=>   sum |x_i| c_i <= p t
            return p, tuple(int(p / s) for s in self.params)
        if f is Family.HPOLYTOPE:
            a, b = self.params
            rows = []
            for row, bound in zip(a, b):
                d = lcm_all(x.denominator for x in row)
                rows.append((tuple(int(x * d) for x in row), d * bound))
            return tuple(rows)
        return None

    def member_test(self, t=1) -> Callable[[Sequence[int]], bool]:
        """Return a fast predicate ``x -> gauge(x) <= t`` for integer vectors x."""
        t = to_fraction(t)
        f = self.family
        if t < 0:
            return lambda x: False
        if f is Family.BALL:
            cap = math.floor((self.params[0] * t) ** 2)
            return lambda x: sum(v * v for v in x) <= cap
        if f is Family.BOX:
            caps = tuple(math.floor(h * t) for h in self.params)
            return lambda x: all(-c <= v <= c for v, c in zip(x, caps))
        if f is Family.CROSSPOLYTOPE:
            p, coeffs = self._integer_form
            cap = math.floor(p * t)
            return lambda x: sum(abs(v) * c for v, c in zip(x, coeffs)) <= cap
        if f is Family.ELLIPSOID:
            d, m = self._integer_form
            cap = math.floor(d * t * t)
            n = self.dim

            def test(x):
                s = 0
                for i in range(n):
                    xi = x[i]
                    if xi:
                        row = m[i]
                        s += xi * sum(row[j] * x[j] for j in range(n))
                return s <= cap

            return test
        rows = tuple((row, math.floor(bound * t)) for row, bound in self._integer_form)
        return lambda x: all(-c <= _dot(row, x) <= c for row, c in rows)

    def __str__(self) -> str:
        return json.dumps(body_to_dict(self))


# ---------------------------------------------------------------------------
# operations


def _check_dim(body: Body, x: Vector) -> None:
    if len(x) != body.dim:
        raise DimensionMismatch(f"vector of length {len(x)} for a body of dimension {body.dim}")


def gauge(body: Body, x: Vector) -> GaugeValue:
    """Minkowski functional of ``body`` at ``x``: the least t with x in tC."""
    _check_dim(body, x)
    x = [to_fraction(v) for v in x]
    f, p = body.family, body.params
    if f is Family.BALL:
        return GaugeValue.sqrt(sum(v * v for v in x) / (p[0] * p[0]))
    if f is Family.ELLIPSOID:
        return GaugeValue.sqrt(_quad(p, x))
    if f is Family.BOX:
        return GaugeValue.rational(max(abs(v) / h for v, h in zip(x, p)))
    if f is Family.CROSSPOLYTOPE:
        return GaugeValue.rational(sum(abs(v) / s for v, s in zip(x, p)))
    a, b = p
    return GaugeValue.rational(max(abs(_dot(row, x)) / bound for row, bound in zip(a, b)))


def support(body: Body, x: Vector) -> GaugeValue:
    """Support function ``max_{u in C} u.x``, i.e. the gauge of the polar body."""
    _check_dim(body, x)
    if body.family is Family.HPOLYTOPE:
        raise UnsupportedFamily("support function of an hpolytope is not available")
    return gauge(body.polar(), x)


def contains(body: Body, x: Vector, t=1) -> bool:
    """Exact test ``gauge(body, x) <= t``; integer inputs take a fast path."""
    _check_dim(body, x)
    if all(isinstance(v, int) for v in x):
        return body.member_test(t)(x)
    return gauge(body, x) <= to_fraction(t)


def bounding_box(body: Body, t=1) -> tuple[int, ...]:
    """Per-axis integer bounds M_i with ``t*C ∩ Z^n ⊆ prod [-M_i, M_i]``."""
    t = to_fraction(t)
    if t <= 0:
        raise ValueError("dilation factor must be positive")
    f, p = body.family, body.params
    if f is Family.BALL:
        return (math.floor(p[0] * t),) * body.dim
    if f in (Family.BOX, Family.CROSSPOLYTOPE):
        return tuple(math.floor(v * t) for v in p)
    if f is Family.ELLIPSOID:
        inv = body._inverse
        return tuple(floor_sqrt(t * t * inv[i][i]) for i in range(body.dim))
    return _hpolytope_box(body, t)


def _hpolytope_box(body: Body, t: Fraction, max_subsets: int = 500) -> tuple[int, ...]:
    # x = M^{-1} y with |y_k| <= b_k t for any n independent rows M
    a, b = body.params
    n = body.dim
    best = [None] * n
    for count, idx in enumerate(itertools.combinations(range(len(a)), n)):
        if count >= max_subsets and all(v is not None for v in best):
            break
        rows = [a[i] for i in idx]
        try:
            inv = _mat_inverse(rows)
        except ZeroDivisionError:
            continue
        for j in range(n):
            bound = math.floor(sum(abs(inv[j][k]) * b[idx[k]] * t for k in range(n)))
            if best[j] is None or bound < best[j]:
                best[j] = bound
    return tuple(best)


def transform(body: Body, u: Sequence[Sequence[int]]) -> Body:
    """The body ``U^{-1} C`` for a unimodular integer matrix U.

    ``x`` lies in the result iff ``U x`` lies in ``C``.  Because U maps
    Z^n onto itself, successive minima and the covering/general-position
    numbers of the lattice problem are unchanged.
    """
    u = [[int(v) for v in row] for row in u]
    n = body.dim
    if len(u) != n or any(len(row) != n for row in u):
        raise DimensionMismatch("transform matrix has the wrong shape")
    if abs(bareiss_det(u)) != 1:
        raise NonUnimodular("transform matrix must have determinant +-1")
    f, p = body.family, body.params
    ut = [[u[j][i] for j in range(n)] for i in range(n)]

    def congruence(a):
        # U^T A U
        au = [[sum(a[i][k] * u[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        return [[sum(ut[i][k] * au[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    if f is Family.BALL:
        r2 = p[0] * p[0]
        ident = [[Fraction(int(i == j)) / r2 for j in range(n)] for i in range(n)]
        return Body.ellipsoid(congruence(ident))
    if f is Family.ELLIPSOID:
        return Body.ellipsoid(congruence(p))
    normals, bounds = _as_halfspaces(body)
    rows = [[sum(row[k] * u[k][j] for k in range(n)) for j in range(n)] for row in normals]
    return Body.hpolytope(rows, bounds)


def _as_halfspaces(body: Body) -> tuple[list, list]:
    f, p, n = body.family, body.params, body.dim
    if f is Family.BOX:
        return [[int(i == j) for j in range(n)] for i in range(n)], list(p)
    if f is Family.CROSSPOLYTOPE:
        # |sum sigma_i x_i / s_i| <= 1 for sign vectors with sigma_1 = +1
        rows = []
        for signs in itertools.product((1, -1), repeat=n - 1):
            sigma = (1,) + signs
            rows.append([Fraction(sg) / s for sg, s in zip(sigma, p)])
        return rows, [Fraction(1)] * len(rows)
    if f is Family.HPOLYTOPE:
        return [list(r) for r in p[0]], list(p[1])
    raise UnsupportedFamily(f"{f.value} has no halfspace description")


# ---------------------------------------------------------------------------
# JSON descriptor


def body_to_dict(body: Body) -> dict:
    f, p = body.family, body.params
    if f is Family.BALL:
        params = {"radius": format_fraction(p[0])}
    elif f is Family.ELLIPSOID:
        params = {"matrix": [[format_fraction(x) for x in row] for row in p]}
    elif f is Family.BOX:
        params = {"half_widths": [format_fraction(x) for x in p]}
    elif f is Family.CROSSPOLYTOPE:
        params = {"scales": [format_fraction(x) for x in p]}
    else:
        params = {
            "normals": [[format_fraction(x) for x in row] for row in p[0]],
            "bounds": [format_fraction(x) for x in p[1]],
        }
    return {"family": f.value, "dim": body.dim, "params": params}


def body_from_dict(data: dict) -> Body:
    """Parse the JSON body descriptor (rationals given as ``"p/q"`` strings or ints)."""
    try:
        family = Family(str(data["family"]).lower())
        dim = int(data["dim"])
        params = data["params"]
        if family is Family.BALL:
            body = Body.ball(params["radius"], dim)
        elif family is Family.ELLIPSOID:
            body = Body.ellipsoid(params["matrix"])
        elif family is Family.BOX:
            body = Body.box(params["half_widths"])
        elif family is Family.CROSSPOLYTOPE:
            body = Body.cross_polytope(params["scales"])
        else:
            body = Body.hpolytope(params["normals"], params["bounds"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidBody):
            raise
        raise InvalidBody(f"malformed body descriptor: {exc}") from exc
    if body.dim != dim:
        raise InvalidBody(f"descriptor says dim={dim} but parameters give {body.dim}")
    return body


def load_body(path) -> Body:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidBody(f"{path}: not valid JSON ({exc})") from exc
    return body_from_dict(data)


__all__ = [
    "Body",
    "Family",
    "body_from_dict",
    "body_to_dict",
    "bounding_box",
    "contains",
    "gauge",
    "load_body",
    "support",
    "transform",
]
