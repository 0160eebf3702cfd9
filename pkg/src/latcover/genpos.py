"""Lattice points in general position from the discrete moment curve.

Over the field with p elements the points ``(1, i, i², ..., i^{n-1})`` for
``0 <= i < p`` together with ``e_n`` are n-wise independent (Vandermonde).
Each of them is lifted into the body as ``j v + p w`` with ``1 <= j < p`` and
``w`` integral; the lift keeps independence mod p and hence over Q.  When p is
below the admissibility bound computed from the successive minima, a lift is
guaranteed to exist and an exhaustive search finds it.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    HypothesisViolated,
    MinimaNotComputed,
    NoAdmissiblePrime,
    NoLiftFound,
    VerificationFailed,
)
from .exact import bareiss_det, det_mod, root_enclosure, to_fraction
from .geometry import Body, bounding_box, contains
from .lattice import MinimaProfile, canonical_normal, successive_minima

Interval = tuple[Fraction, Fraction]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_CHECK_PRIME = (1 << 61) - 1


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def largest_prime_below(bound) -> Optional[int]:
    """Largest prime p with ``p < bound`` (strict), or None."""
    bound = to_fraction(bound)
    p = math.ceil(bound) - 1
    while p >= 2:
        if is_prime(p):
            return p
        p -= 1
    return None


@dataclass(frozen=True)
class LowerBoundReport:
    """Evaluated general-position lower bound and the lift admissibility bound.

    Intervals are certified enclosures ``(lo, hi)``; they collapse to a point
    when the value is rational.
    """

    n: int
    m_star: int
    min_term: Interval
    bound: Interval
    p_bound: Interval

    @property
    def exact(self) -> bool:
        return self.bound[0] == self.bound[1]

    def bound_float(self) -> float:
        return float((self.bound[0] + self.bound[1]) / 2)


def _mul(a: Interval, b: Interval) -> Interval:
    # nonnegative intervals only
    return a[0] * b[0], a[1] * b[1]


def minima_power_terms(profile: MinimaProfile) -> tuple[int, Interval]:
    """Smallest ``(λ_m ... λ_n)^{-1/(n-m)}`` over ``0 < m < n``.

    Returns the minimising m (smallest on ties) and a certified enclosure of
    the value.  The minimiser is found exactly: with ``P_m`` the product of
    squared minima, term_a < term_b iff ``P_a^{-b} < P_b^{-a}``.
    """
    n = profile.dim
    squares = [lam.square for lam in profile.minima]
    prods = {}
    for m in range(1, n):
        prods[m] = math.prod(squares[m - 1 :])
    best = 1
    for m in range(2, n):
        a, b = best, m
        # compare P_m^{-1/(2(n-m))}: raise to 2(n-a)(n-b)
        lhs = (1 / prods[m]) ** (n - a)
        rhs = (1 / prods[a]) ** (n - b)
        if lhs < rhs:
            best = m
    enc = root_enclosure(1 / prods[best], 2 * (n - best))
    return best, enc


def lower_bound(profile: MinimaProfile) -> LowerBoundReport:
    """Evaluate ``(1-λ_n)/(16n²) · min_m (λ_m...λ_n)^{-1/(n-m)}``.

    ``p_bound`` is the same expression with ``8n²``; any integer strictly below
    it (and above 1) admits lifts.
    """
    if not isinstance(profile, MinimaProfile):
        raise MinimaNotComputed("lower_bound needs a MinimaProfile from successive_minima")
    n = profile.dim
    lam_n = profile.minima[-1]
    if lam_n > 1:
        raise HypothesisViolated(f"lambda_n = {lam_n} exceeds 1")
    m_star, term = minima_power_terms(profile)
    lo, hi = lam_n.enclosure()
    gap = (1 - hi, 1 - lo)
    scaled = _mul(gap, term)
    bound = (scaled[0] / (16 * n * n), scaled[1] / (16 * n * n))
    p_bound = (scaled[0] / (8 * n * n), scaled[1] / (8 * n * n))
    return LowerBoundReport(n, m_star, term, bound, p_bound)


def largest_admissible_prime(report: LowerBoundReport) -> Optional[int]:
    """Largest prime certainly below the admissibility bound.

    Uses the lower end of the enclosure, so an irrational bound never admits a
    prime that the exact value would reject.
    """
    return largest_prime_below(report.p_bound[0])


def moment_curve(p: int, n: int) -> list[tuple[int, ...]]:
    """``(1, i, ..., i^{n-1})`` for ``0 <= i < p`` followed by ``e_n``."""
    pts = [tuple(i**k for k in range(n)) for i in range(p)]
    pts.append(tuple(int(k == n - 1) for k in range(n)))
    return pts


@dataclass(frozen=True)
class Lift:
    index: Optional[int]  # None for the point at infinity e_n
    j: int
    w: tuple[int, ...]
    point: tuple[int, ...]


def lemma_lift(body: Body, v: Sequence[int], p: int) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Find ``1 <= j < p`` and ``w in Z^n`` with ``j v + p w`` in the body.

    Scans j upwards; for each j every w of the integer window covering
    ``(C - j v) / p`` is tested, in descending lexicographic order.  The first
    hit is returned as ``(j, w, point)``.
    """
    v = tuple(int(x) for x in v)
    n = body.dim
    if len(v) != n:
        raise ValueError("vector dimension does not match the body")
    if p < 2:
        raise ValueError("p must be at least 2")
    box = bounding_box(body, 1)
    inside = body.member_test(1)
    for j in range(1, p):
        ranges = []
        for m, c in zip(box, v):
            lo = -((m + j * c) // p)  # ceil((-m - j c) / p)
            hi = (m - j * c) // p
            ranges.append(range(hi, lo - 1, -1))
        for w in itertools.product(*ranges):
            x = tuple(j * c + p * d for c, d in zip(v, w))
            if inside(x):
                return j, tuple(w), x
    raise NoLiftFound(f"no j in [1, {p}) and w with j*{v} + {p}*w inside the body")


@dataclass
class GenPosCertificate:
    """Points of the body in general position plus their lifting data."""

    p: int
    body: Body
    lifts: list[Lift] = field(default_factory=list)

    @property
    def points(self) -> list[tuple[int, ...]]:
        return [lift.point for lift in self.lifts]

    def check(self) -> bool:
        """Re-verify every invariant exactly; raises on the first failure."""
        n = self.body.dim
        curve = moment_curve(self.p, n)
        for lift in self.lifts:
            src = curve[-1] if lift.index is None else curve[lift.index]
            expect = tuple(lift.j * a + self.p * b for a, b in zip(src, lift.w))
            if expect != lift.point or not 1 <= lift.j < self.p:
                raise VerificationFailed(f"lift data inconsistent for curve index {lift.index}")
            if not contains(self.body, lift.point):
                raise VerificationFailed(f"point {lift.point} lies outside the body")
        if len(self.lifts) != self.p + 1:
            raise VerificationFailed("certificate must lift all p+1 curve points")
        if not verify_general_position(self.points, n):
            raise VerificationFailed("certificate points are not in general position")
        return True


def build_general_position(
    body: Body,
    prime: Optional[int] = None,
    profile: Optional[MinimaProfile] = None,
    threads: int = 1,
) -> GenPosCertificate:
    """Lift the moment curve over the largest admissible prime into the body.

    The result has ``p + 1`` points and certifies ``h(C) > p``.
    """
    if profile is None:
        profile = successive_minima(body)
    if prime is None:
        report = lower_bound(profile)
        prime = largest_admissible_prime(report)
        if prime is None:
            raise NoAdmissiblePrime(
                f"no prime below the admissibility bound {float(report.p_bound[1]):.6g}"
            )
    elif not is_prime(prime):
        raise ValueError(f"{prime} is not prime")
    n = body.dim
    curve = moment_curve(prime, n)
    indices: list[Optional[int]] = list(range(prime)) + [None]

    def lift_one(k):
        j, w, x = lemma_lift(body, curve[k], prime)
        return Lift(indices[k], j, w, x)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            lifts = list(pool.map(lift_one, range(len(curve))))
    else:
        lifts = [lift_one(k) for k in range(len(curve))]
    cert = GenPosCertificate(prime, body, lifts)
    cert.check()
    return cert


def verify_general_position(points: Sequence[Sequence[int]], n: int) -> bool:
    """True iff every n of the points are linearly independent.

    Determinants are screened modulo a 61-bit prime; only residues that vanish
    are recomputed exactly.
    """
    pts = [tuple(int(x) for x in p) for p in points]
    if any(len(p) != n for p in pts):
        raise ValueError("point dimension mismatch")
    if len(pts) < n:
        return True
    if any(not any(p) for p in pts):
        return False
    if len({canonical_normal(p) for p in pts}) < len(pts):
        return False  # two points on one line through 0
    if n == 2:
        return True
    for combo in itertools.combinations(pts, n):
        if det_mod(combo, _CHECK_PRIME) == 0 and bareiss_det(combo) == 0:
            return False
    return True


def general_position_mod(points: Sequence[Sequence[int]], n: int, p: int) -> bool:
    """n-wise independence over the field with p elements."""
    return all(det_mod(c, p) != 0 for c in itertools.combinations(points, n))
