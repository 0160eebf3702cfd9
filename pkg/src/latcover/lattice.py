"""Lattice points of convex bodies, successive minima and orthogonal lattices.

All routines work over Z^n with exact integer/rational arithmetic.  Point
lists are returned in lexicographic order so downstream results do not depend
on enumeration strategy.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import EnumerationBudgetExceeded, NotPrimitive, ZeroVector
from .exact import EchelonBasis, GaugeValue, bareiss_det, floor_sqrt, to_fraction
from .geometry import Body, _mat_inverse, bounding_box, gauge

DEFAULT_BUDGET = 10**8


def default_budget() -> int:
    """Grid-point cap per enumeration; ``LATTICE_COVER_BUDGET`` overrides it."""
    env = os.environ.get("LATTICE_COVER_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _check_budget(box: Sequence[int], budget: int | None) -> None:
    budget = default_budget() if budget is None else budget
    size = math.prod(2 * m + 1 for m in box)
    if size > budget:
        raise EnumerationBudgetExceeded(f"enumeration window has {size} grid points, budget is {budget}")


def iter_box(box: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All integer vectors of ``prod [-M_i, M_i]`` in lexicographic order."""
    return itertools.product(*(range(-m, m + 1) for m in box))


def enumerate_points(body: Body, t=1, budget: int | None = None) -> list[tuple[int, ...]]:
    """Every ``x in Z^n`` with ``gauge(body, x) <= t``, lexicographically sorted."""
    t = to_fraction(t)
    if t <= 0:
        raise ValueError("dilation factor must be positive")
    box = bounding_box(body, t)
    _check_budget(box, budget)
    test = body.member_test(t)
    return [x for x in iter_box(box) if test(x)]


@dataclass(frozen=True)
class MinimaProfile:
    """Successive minima with linearly independent witnesses ``gauge(v_i) = λ_i``."""

    minima: tuple[GaugeValue, ...]
    witnesses: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.minima)

    def __getitem__(self, i: int) -> GaugeValue:
        return self.minima[i]


def _greedy_minima(candidates: Iterable[tuple[Fraction, tuple[int, ...]]], dim: int, want: int):
    """Greedy independent extension over candidates sorted by (value², lex)."""
    basis = EchelonBasis(dim)
    values, witnesses = [], []
    for key, x in sorted(candidates):
        if basis.add(x):
            values.append(key)
            witnesses.append(x)
            if basis.rank == want:
                break
    return values, witnesses


def successive_minima(body: Body, budget: int | None = None) -> MinimaProfile:
    """Exact successive minima ``λ_i = min{λ : dim span(λC ∩ Z^n) >= i}``.

    Dilates ``t*C`` are enumerated with t doubling until their lattice points
    have full rank; at that point every minimum is attained inside the current
    dilate, so a greedy scan in increasing gauge order is exact.
    """
    n = body.dim
    unit = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    t = min(gauge(body, e).enclosure()[1] for e in unit)
    while True:
        points = [x for x in enumerate_points(body, t, budget) if any(x)]
        cands = [(gauge(body, x).square, x) for x in points]
        _, witnesses = _greedy_minima(cands, n, n)
        if len(witnesses) == n:
            break
        t *= 2
    minima = tuple(gauge(body, w) for w in witnesses)
    return MinimaProfile(minima, tuple(witnesses))


# ---------------------------------------------------------------------------
# primitive vectors and hyperplanes


def is_primitive(v: Sequence[int]) -> bool:
    if not any(v):
        raise ZeroVector("the zero vector is neither primitive nor imprimitive")
    return math.gcd(*map(int, v)) == 1


def canonical_normal(v: Sequence[int]) -> tuple[int, ...]:
    """Primitive multiple of v whose first nonzero coordinate is positive."""
    v = [int(x) for x in v]
    g = math.gcd(*v)
    if g == 0:
        raise ZeroVector("cannot normalise the zero vector")
    first = next(x for x in v if x)
    if first < 0:
        g = -g
    return tuple(x // g for x in v)


@dataclass(frozen=True, order=True)
class Hyperplane:
    """The linear hyperplane ``{x : normal . x = 0}`` with a canonical normal."""

    normal: tuple[int, ...]

    def __post_init__(self):
        if canonical_normal(self.normal) != tuple(self.normal):
            raise ValueError(f"normal {self.normal} is not in canonical form")

    @classmethod
    def from_normal(cls, v: Sequence[int]) -> Hyperplane:
        return cls(canonical_normal(v))

    @classmethod
    def spanned_by(cls, vectors: Sequence[Sequence[int]]) -> Hyperplane:
        return cls.from_normal(normal_of(vectors))

    def contains(self, x: Sequence[int]) -> bool:
        return sum(a * b for a, b in zip(self.normal, x)) == 0


def normal_of(vectors: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Cofactor vector of n-1 integer vectors in Z^n (zero iff dependent)."""
    rows = [list(map(int, v)) for v in vectors]
    n = len(rows) + 1
    if any(len(r) != n for r in rows):
        raise ValueError("need n-1 vectors of length n")
    out = []
    for j in range(n):
        minor = [[r[k] for k in range(n) if k != j] for r in rows]
        out.append((-1) ** j * bareiss_det(minor))
    return tuple(out)


def integer_kernel(rows: Sequence[Sequence[int]], n: int | None = None) -> list[tuple[int, ...]]:
    """A Z-basis of ``{x in Z^n : M x = 0}`` by unimodular column reduction.

    Column operations bring M to echelon form ``M U = [H | 0]``; the columns of
    the unimodular U that meet the zero block span the integer kernel.
    """
    a = [list(map(int, r)) for r in rows]
    if n is None:
        n = len(a[0])
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_sub(dst, src, q):
        for row in a:
            row[dst] -= q * row[src]
        for row in u:
            row[dst] -= q * row[src]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    r = 0
    for row in a:
        if r == n:
            break
        while True:
            nz = [j for j in range(r, n) if row[j]]
            if not nz:
                break
            j = min(nz, key=lambda c: (abs(row[c]), c))
            if j != r:
                col_swap(r, j)
            done = True
            for c in range(r + 1, n):
                if row[c]:
                    col_sub(c, r, row[c] // row[r])
                    if row[c]:
                        done = False
            if done:
                r += 1
                break
    return [tuple(u[i][j] for i in range(n)) for j in range(r, n)]


def _gram(basis: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[sum(a * b for a, b in zip(x, y)) for y in basis] for x in basis]


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> list[tuple[int, ...]]:
    """Exact LLL reduction of a (row) basis; the lattice is unchanged."""
    b = [list(map(int, v)) for v in basis]
    k = len(b)
    if k <= 1:
        return [tuple(v) for v in b]

    def gso():
        bstar, mu, norms = [], [[Fraction(0)] * k for _ in range(k)], []
        for i in range(k):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = sum(Fraction(x) * y for x, y in zip(b[i], bstar[j])) / norms[j]
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(sum(x * x for x in v))
        return mu, norms

    mu, norms = gso()
    i = 1
    while i < k:
        for j in range(i - 1, -1, -1):
            q = round(mu[i][j])
            if q:
                b[i] = [x - q * y for x, y in zip(b[i], b[j])]
                mu, norms = gso()
        if norms[i] >= (delta - mu[i][i - 1] ** 2) * norms[i - 1]:
            i += 1
        else:
            b[i], b[i - 1] = b[i - 1], b[i]
            mu, norms = gso()
            i = max(i - 1, 1)
    return [tuple(v) for v in b]


@dataclass(frozen=True)
class OrthogonalLattice:
    """The (n-1)-dimensional lattice ``Z^n ∩ v^⊥`` of a primitive vector v."""

    v: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]
    det_sq: Fraction

    @property
    def gram(self) -> list[list[int]]:
        return _gram(self.basis)

    def gram_det(self) -> int:
        return bareiss_det(self.gram)


def orthogonal_lattice(v: Sequence[int]) -> OrthogonalLattice:
    v = tuple(int(x) for x in v)
    if not is_primitive(v):
        raise NotPrimitive(f"{v} is not primitive")
    kernel = integer_kernel([v])
    basis = tuple(lll_reduce(kernel))
    lat = OrthogonalLattice(v, basis, Fraction(sum(x * x for x in v)))
    if lat.gram_det() != lat.det_sq:
        raise AssertionError(f"kernel basis of {v} has the wrong determinant")
    return lat


def minima_of_sublattice(lat: OrthogonalLattice, budget: int | None = None, return_witnesses: bool = False):
    """Euclidean successive minima of ``L(v)`` by enumeration in basis coordinates.

    Coefficient vectors c with ``c^T G c <= R²`` satisfy
    ``c_i² <= R² (G^{-1})_ii``; R² doubles until the short vectors span.
    """
    basis = lat.basis
    k = len(basis)
    n = len(lat.v)
    g = lat.gram
    ginv = _mat_inverse(g)
    r2 = Fraction(min(g[i][i] for i in range(k)))
    while True:
        box = [floor_sqrt(r2 * ginv[i][i]) for i in range(k)]
        _check_budget(box, budget)
        cands = []
        for c in iter_box(box):
            if not any(c):
                continue
            x = tuple(sum(c[i] * basis[i][j] for i in range(k)) for j in range(n))
            q = sum(a * a for a in x)
            if q <= r2:
                cands.append((Fraction(q), x))
        values, witnesses = _greedy_minima(cands, n, k)
        if len(values) == k:
            break
        r2 *= 4
    minima = [GaugeValue.sqrt(q) for q in values]
    if return_witnesses:
        return minima, witnesses
    return minima
