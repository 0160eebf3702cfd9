"""Covering all lattice points of a body by few hyperplanes through the origin.

The normals are short integer combinations of polar successive-minima
witnesses: ``D_α = {Σ a_i w_i : |a_i| <= α/ν_i}``.  Once the digit box
``D_α⁺`` has more elements than there are integers in ``[-kα, kα]``
(``k = n-m+1``), every lattice point ``u`` of the body has two digit vectors
with equal scalar product, so ``u`` is orthogonal to their nonzero difference.
Every family is verified against exhaustive enumeration before it is returned.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (
    CoverageVerificationFailed,
    HypothesisViolated,
    InvalidNu,
    UnsupportedFamily,
    VerificationFailed,
)
from .exact import GaugeValue, to_fraction
from .genpos import Interval, minima_power_terms
from .geometry import Body, support
from .lattice import (
    Hyperplane,
    MinimaProfile,
    canonical_normal,
    enumerate_points,
    successive_minima,
)

NU_STEP = Fraction(1, 2**16)


@dataclass(frozen=True)
class PolarMinimaProfile:
    """Successive minima μ_i of the polar body, witnessed by ``support(C, w_i) = μ_i``."""

    mu: tuple[GaugeValue, ...]
    witnesses: tuple[tuple[int, ...], ...]


def polar_minima(body: Body, budget: Optional[int] = None) -> PolarMinimaProfile:
    if not body.supports_polar:
        raise UnsupportedFamily(f"{body.family.value} bodies have no exact support function")
    prof = successive_minima(body.polar(), budget)
    return PolarMinimaProfile(prof.minima, prof.witnesses)


def mahler_products(profile: MinimaProfile, polar: PolarMinimaProfile) -> list[GaugeValue]:
    """``λ_i μ_{n-i+1}`` for i = 1..n; each is at least 1."""
    n = profile.dim
    return [profile.minima[i] * polar.mu[n - 1 - i] for i in range(n)]


def nu_from_mu(mu: Sequence[GaugeValue], k: int) -> tuple[Fraction, ...]:
    """Rational ``ν_i >= μ_i``, strictly increasing: ``μ̂_i (1 + i 2^-16)``.

    ``μ̂_i`` is μ_i itself when rational, else the upper end of a certified
    enclosure.
    """
    nu = []
    for i, m in enumerate(mu[:k], start=1):
        exact = m.as_fraction()
        hat = exact if exact is not None else m.enclosure()[1]
        nu.append(hat * (1 + i * NU_STEP))
    nu.sort()
    return tuple(nu)


def f_count(alpha: Fraction, nu: Sequence[Fraction]) -> int:
    """``|D_α⁺| = Π (⌊α/ν_i⌋ + 1)``."""
    return math.prod(math.floor(alpha / v) + 1 for v in nu)


def _validate_nu(nu: Sequence[Fraction]) -> tuple[Fraction, ...]:
    nu = tuple(to_fraction(v) for v in nu)
    if not nu or any(v <= 0 for v in nu):
        raise InvalidNu("nu must be positive")
    if any(a >= b for a, b in zip(nu, nu[1:])):
        raise InvalidNu("nu must be strictly increasing")
    return nu


def choose_alpha(nu: Sequence, m: int, n: int) -> tuple[Fraction, int]:
    """Smallest α with ``f(α) >= 16 k^{k/(k-1)} (ν_1...ν_k)^{1/(k-1)}``, ``k = n-m+1``.

    The threshold is compared exactly after raising both sides to the power
    ``k-1``.  f only jumps at multiples of some ν_i, so the scan walks those
    multiples in increasing order.
    """
    nu = _validate_nu(nu)
    k = n - m + 1
    if not 0 < m < n:
        raise InvalidNu(f"m must satisfy 0 < m < n, got m={m}, n={n}")
    if len(nu) != k:
        raise InvalidNu(f"expected {k} values of nu, got {len(nu)}")
    prod = math.prod(nu)
    if prod < 1:
        raise InvalidNu("the product of nu must be at least 1")
    target = 16 ** (k - 1) * k**k * prod

    def meets(f):
        return f ** (k - 1) >= target

    alpha = Fraction(0)
    heap = [(v, i, 1) for i, v in enumerate(nu)]
    heapq.heapify(heap)
    f = 1
    while not meets(f):
        alpha, i, c = heapq.heappop(heap)
        heapq.heappush(heap, (nu[i] * (c + 1), i, c + 1))
        f = f_count(alpha, nu)
    if not f > 2 * k * alpha + 1:
        raise VerificationFailed(f"threshold f(α) > 2kα+1 fails at α={alpha}")
    if not 4 * k * alpha <= f:
        raise VerificationFailed(f"4kα <= f(α) fails at α={alpha}")
    if not 32 <= f:
        raise VerificationFailed(f"32 <= f(α) fails at α={alpha}")
    return alpha, f


def build_D_alpha(
    witnesses: Sequence[Sequence[int]],
    nu: Sequence,
    alpha,
    nonnegative: bool = False,
) -> list[tuple[int, ...]]:
    """Integer combinations ``Σ a_i w_i`` with ``|a_i| <= α/ν_i``.

    With ``nonnegative=True`` the digits run over ``[0, α/ν_i]`` (the box
    ``D_α⁺``).  Output order follows the digit tuples lexicographically.
    """
    alpha = to_fraction(alpha)
    nu = [to_fraction(v) for v in nu]
    bounds = [math.floor(alpha / v) for v in nu]
    ranges = [range(0 if nonnegative else -b, b + 1) for b in bounds]
    n = len(witnesses[0])
    w = [tuple(int(x) for x in v) for v in witnesses]
    out = []
    for digits in itertools.product(*ranges):
        out.append(tuple(sum(a * v[j] for a, v in zip(digits, w)) for j in range(n)))
    return out


def pigeonhole_collision(u: Sequence[int], d_plus: Sequence[Sequence[int]]):
    """Two distinct members of ``D_α⁺`` with equal scalar product against u."""
    seen = {}
    for v in d_plus:
        s = sum(a * b for a, b in zip(u, v))
        if s in seen:
            return seen[s], v
        seen[s] = v
    return None


@dataclass(frozen=True)
class CoverFamily:
    hyperplanes: tuple[Hyperplane, ...]
    m: int
    nu: tuple[Fraction, ...]
    alpha: Fraction
    witnesses: tuple[tuple[int, ...], ...]
    f_alpha: int

    @property
    def k(self) -> int:
        return len(self.nu)

    @property
    def size(self) -> int:
        return len(self.hyperplanes)

    @property
    def size_bound(self) -> int:
        """``2^{n-m+1} f(α)``, the bound on ``|D_α|`` used for the family size."""
        return 2**self.k * self.f_alpha

    def diagnostics(self) -> dict:
        return {
            "m": self.m,
            "alpha": str(self.alpha),
            "f_alpha": self.f_alpha,
            "size": self.size,
            "bound_eq5": self.size_bound,
        }


def uncovered_points(
    points: Sequence[Sequence[int]], normals: Sequence[Sequence[int]], chunk: int = 4096
) -> list[tuple[int, ...]]:
    """Points of ``points`` orthogonal to none of ``normals`` (exact)."""
    if not len(points):
        return []
    if not len(normals):
        return [tuple(p) for p in points]
    pmax = max(abs(x) for p in points for x in p)
    nmax = max(abs(x) for v in normals for x in v)
    dim = len(points[0])
    dtype = np.int64 if pmax * nmax * dim < 2**62 else object
    P = np.array(points, dtype=dtype)
    N = np.array(normals, dtype=dtype)
    covered = np.zeros(len(P), dtype=bool)
    for start in range(0, len(N), chunk):
        block = N[start : start + chunk]
        hit = (P[~covered] @ block.T == 0).any(axis=1)
        idx = np.flatnonzero(~covered)
        covered[idx[hit]] = True
        if covered.all():
            break
    return [tuple(int(x) for x in P[i]) for i in np.flatnonzero(~covered)]


def _cover_for_m(body: Body, polar: PolarMinimaProfile, m: int, points) -> CoverFamily:
    n = body.dim
    k = n - m + 1
    witnesses = polar.witnesses[:k]
    nu = nu_from_mu(polar.mu, k)
    alpha, f = choose_alpha(nu, m, n)
    normals = {canonical_normal(d) for d in build_D_alpha(witnesses, nu, alpha) if any(d)}
    family = CoverFamily(
        hyperplanes=tuple(Hyperplane(v) for v in sorted(normals)),
        m=m,
        nu=nu,
        alpha=alpha,
        witnesses=tuple(witnesses),
        f_alpha=f,
    )
    missed = uncovered_points(points, [h.normal for h in family.hyperplanes])
    if missed:
        raise CoverageVerificationFailed(f"m={m}: {len(missed)} lattice points uncovered, e.g. {missed[0]}")
    if family.size > family.size_bound:
        raise VerificationFailed(f"m={m}: family size {family.size} exceeds 2^k f(α)")
    return family


def build_cover(
    body: Body,
    m: Union[int, str] = "auto",
    profile: Optional[MinimaProfile] = None,
    budget: Optional[int] = None,
) -> CoverFamily:
    """Hyperplanes through 0 covering ``C ∩ Z^n``, verified exhaustively.

    ``m="auto"`` tries every ``0 < m < n`` and keeps the smallest family
    (ties go to the smaller m).
    """
    n = body.dim
    if not body.supports_polar:
        raise UnsupportedFamily("cover construction needs the polar body")
    if profile is None:
        profile = successive_minima(body, budget)
    if profile.minima[-1] > 1:
        raise HypothesisViolated("lambda_n > 1: the lattice points already lie in one hyperplane")
    polar = polar_minima(body, budget)
    points = [x for x in enumerate_points(body, 1, budget) if any(x)]
    if m == "auto":
        ms = list(range(1, n))
    else:
        m = int(m)
        if not 0 < m < n:
            raise ValueError(f"m must satisfy 0 < m < n, got {m}")
        ms = [m]
    best = None
    for mm in ms:
        fam = _cover_for_m(body, polar, mm, points)
        if best is None or fam.size < best.size:
            best = fam
    return best


def witness_support_ok(body: Body, family: CoverFamily, polar: PolarMinimaProfile) -> bool:
    """``support(C, w_i) <= μ_i`` for every digit-box generator."""
    return all(support(body, w) <= mu for w, mu in zip(family.witnesses, polar.mu))


@dataclass(frozen=True)
class CoverBoundReport:
    m_star: int
    min_term: Interval
    c: float
    value: float


def theorem2_bound(profile: MinimaProfile, n: Optional[int] = None, c: float = 1.0) -> CoverBoundReport:
    """``c 2^n n² log n · min_m (λ_m...λ_n)^{-1/(n-m)}`` as a diagnostic.

    The absolute constant c is not known, so the value is only reported.
    """
    n = profile.dim if n is None else n
    if profile.minima[-1] > 1:
        raise HypothesisViolated("lambda_n must be at most 1")
    m_star, term = minima_power_terms(profile)
    mid = float((term[0] + term[1]) / 2)
    return CoverBoundReport(m_star, term, c, c * 2**n * n * n * math.log(n) * mid)
