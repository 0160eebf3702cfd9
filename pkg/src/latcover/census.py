"""Census of hyperplanes spanned by lattice points of the ball ``r B^n``.

``H_r`` is the set of linear hyperplanes containing n-1 independent lattice
points of norm at most r.  Since a hyperplane is spanned by points iff it is
spanned by their primitive directions, the enumeration runs over primitive
directions up to sign and deduplicates canonical normals.
"""

from __future__ import annotations

import itertools
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath
import numpy as np

from .errors import EnumerationBudgetExceeded, InsufficientData
from .exact import floor_sqrt, format_fraction, to_fraction
from .geometry import Body
from .lattice import (
    Hyperplane,
    canonical_normal,
    default_budget,
    enumerate_points,
    is_primitive,
    minima_of_sublattice,
    normal_of,
    orthogonal_lattice,
)


def ball_points(n: int, r) -> list[tuple[int, ...]]:
    return enumerate_points(Body.ball(r, n), 1)


def primitive_directions(n: int, r) -> list[tuple[int, ...]]:
    """Canonical primitive vectors (first nonzero coordinate positive) in ``r B^n``."""
    return [x for x in ball_points(n, r) if any(x) and is_primitive(x) and canonical_normal(x) == x]


def _canonicalize_rows(c: np.ndarray) -> np.ndarray:
    g = np.gcd.reduce(np.abs(c), axis=1)
    c = c // g[:, None]
    first = np.argmax(c != 0, axis=1)
    sign = np.sign(c[np.arange(len(c)), first])
    return c * sign[:, None]


def _linear_part(prefix: Sequence[Sequence[int]], n: int) -> np.ndarray:
    # normal_of(prefix + [x]) = T @ x, T built column by column
    cols = [normal_of(list(prefix) + [tuple(int(i == k) for i in range(n))]) for k in range(n)]
    return np.array(cols, dtype=np.int64).T


def _spanning_tuples(n: int, count: int):
    """Index prefixes of length n-2 (the last member is vectorised)."""
    return itertools.combinations(range(count), n - 2)


def _normals_for_prefix(prefix, dirs: np.ndarray, n: int):
    start = prefix[-1] + 1 if prefix else 0
    rest = dirs[start:]
    if not len(rest):
        return np.empty((0, n), dtype=np.int64), np.empty(0, dtype=np.int64)
    T = _linear_part([tuple(dirs[i]) for i in prefix], n)
    normals = rest @ T.T
    keep = normals.any(axis=1)
    return normals[keep], np.arange(start, len(dirs))[keep]


@dataclass
class _Incidence:
    normals: np.ndarray  # unique canonical normals, lexicographically sorted
    members: list  # per normal: indices of directions lying in it (only if tracked)
    dirs: np.ndarray


def _hyperplane_data(n: int, r, track: bool, threads: int = 1) -> _Incidence:
    r = to_fraction(r)
    if r < 1:
        raise ValueError("radius must be at least 1")
    dirs = np.array(primitive_directions(n, r), dtype=np.int64).reshape(-1, n)
    d = len(dirs)
    if n == 2:
        normals = _canonicalize_rows(np.stack([-dirs[:, 1], dirs[:, 0]], axis=1)) if d else dirs
        order = np.lexsort(normals.T[::-1]) if d else np.arange(0)
        members = [[int(i)] for i in order] if track else []
        return _Incidence(normals[order], members, dirs)
    n_tuples = math.comb(d, n - 1)
    if n_tuples > default_budget():
        raise EnumerationBudgetExceeded(f"{n_tuples} spanning tuples exceed the budget")
    hadamard = math.ceil(r) ** (n - 1)  # Hadamard: |cofactor entries| <= r^(n-1)
    prefixes = list(_spanning_tuples(n, d))

    def work(chunk):
        out_n, out_pre, out_last = [], [], []
        for prefix in chunk:
            normals, last = _normals_for_prefix(prefix, dirs, n)
            if len(normals):
                out_n.append(normals)
                out_last.append(last)
                out_pre.append(np.repeat(np.array(prefix, dtype=np.int64)[None, :], len(last), axis=0))
        if not out_n:
            return None
        return np.concatenate(out_n), np.concatenate(out_pre), np.concatenate(out_last)

    size = max(1, len(prefixes) // (8 * max(threads, 1)))
    chunks = [prefixes[i : i + size] for i in range(0, len(prefixes), size)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, chunks))
    else:
        parts = [work(c) for c in chunks]
    parts = [p for p in parts if p is not None]
    if not parts:
        return _Incidence(np.empty((0, n), dtype=np.int64), [], dirs)
    raw = _canonicalize_rows(np.concatenate([p[0] for p in parts]))
    base = 2 * hadamard + 1
    if base**n < 2**62:
        keys = np.zeros(len(raw), dtype=np.int64)
        for j in range(n):
            keys = keys * base + (raw[:, j] + hadamard)
        uniq_keys, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
        normals = raw[first]
    else:
        normals, inverse = np.unique(raw, axis=0, return_inverse=True)
    inverse = inverse.reshape(-1)
    members = []
    if track:
        pre = np.concatenate([p[1] for p in parts])
        last = np.concatenate([p[2] for p in parts])
        cols = np.concatenate([pre, last[:, None]], axis=1)  # (tuples, n-1)
        hid = np.repeat(inverse, n - 1)
        pairs = np.unique(hid * d + cols.reshape(-1))
        hs, ds = pairs // d, pairs % d
        splits = np.searchsorted(hs, np.arange(len(normals) + 1))
        members = [ds[splits[i] : splits[i + 1]].tolist() for i in range(len(normals))]
    # np.unique on packed keys already sorts lexicographically (offset base-B digits)
    return _Incidence(normals, members, dirs)


def hyperplane_normals(n: int, r, threads: int = 1) -> np.ndarray:
    """Sorted array of canonical normals of every hyperplane in ``H_r``."""
    return _hyperplane_data(n, r, track=False, threads=threads).normals


def enumerate_hyperplanes(n: int, r, threads: int = 1) -> frozenset[Hyperplane]:
    return frozenset(Hyperplane(tuple(int(x) for x in row)) for row in hyperplane_normals(n, r, threads))


def _multiples_in_ball(u: Sequence[int], r: Fraction) -> int:
    """Number of k >= 1 with ``|k u| <= r``."""
    return floor_sqrt(r * r / sum(int(x) * int(x) for x in u))


def points_on_hyperplanes(points: Sequence[Sequence[int]], normals: np.ndarray, chunk: int = 2048) -> np.ndarray:
    """Per normal, how many of ``points`` lie on its hyperplane."""
    P = np.array(points, dtype=np.int64)
    counts = np.zeros(len(normals), dtype=np.int64)
    for s in range(0, len(normals), chunk):
        counts[s : s + chunk] = (P @ normals[s : s + chunk].T == 0).sum(axis=0)
    return counts


def hyperplanes_through_points(points: Sequence[Sequence[int]], normals: np.ndarray, chunk: int = 2048) -> np.ndarray:
    """Per point, how many of the hyperplanes contain it."""
    P = np.array(points, dtype=np.int64)
    counts = np.zeros(len(P), dtype=np.int64)
    for s in range(0, len(normals), chunk):
        counts += (P @ normals[s : s + chunk].T == 0).sum(axis=1)
    return counts


@dataclass(frozen=True)
class CensusReport:
    n: int
    r: Fraction
    h_count: int
    s_r: Fraction
    ratio: float
    point_count: int

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": format_fraction(self.r),
            "h_count": self.h_count,
            "point_count": self.point_count,
            "s_r": format_fraction(self.s_r),
            "ratio": self.ratio,
        }

    def csv_row(self) -> list:
        return [format_fraction(self.r), self.h_count, self.point_count, format_fraction(self.s_r), repr(self.ratio)]


CSV_HEADER = ["r", "h_count", "point_count", "s_r", "ratio"]


def hyperplane_load(n: int, r, method: str = "incidence", threads: int = 1) -> tuple[int, int]:
    """``(|H_r|, Σ_H |H ∩ rB^n ∩ Z^n|)``.

    ``"incidence"`` adds, per hyperplane, the lattice points along each
    primitive direction it contains; ``"direct"`` tests every ball point
    against every hyperplane.  Both are exact and must agree.
    """
    r = to_fraction(r)
    if method == "incidence":
        data = _hyperplane_data(n, r, track=True, threads=threads)
        weight = [2 * _multiples_in_ball(u, r) for u in data.dirs]
        total = sum(1 + sum(weight[i] for i in mem) for mem in data.members)
        return len(data.normals), total
    if method == "direct":
        normals = hyperplane_normals(n, r, threads)
        return len(normals), int(points_on_hyperplanes(ball_points(n, r), normals).sum())
    raise ValueError(f"unknown method {method!r}")


def census(n: int, r, method: str = "incidence", threads: int = 1) -> CensusReport:
    r = to_fraction(r)
    h, total = hyperplane_load(n, r, method, threads)
    pts = len(ball_points(n, r))
    s_r = Fraction(total, h) if h else Fraction(0)
    return CensusReport(n, r, h, s_r, h / float(r) ** (n * (n - 1)), pts)


def decomposition_replay(n: int, r) -> tuple[int, int]:
    """Both sides of ``Σ_H |H∩P| = |H_r| + Σ_{v≠0} |{H : v ∈ H}|``.

    The left side comes from direction incidences, the right side from a
    point-by-point containment count.
    """
    r = to_fraction(r)
    h, lhs = hyperplane_load(n, r, "incidence")
    normals = hyperplane_normals(n, r)
    nonzero = [x for x in ball_points(n, r) if any(x)]
    rhs = h + int(hyperplanes_through_points(nonzero, normals).sum())
    return lhs, rhs


MIN_SPAN = 2


@dataclass(frozen=True)
class ScalingFit:
    slope: float
    intercept: float
    radii: tuple
    counts: tuple


def fit_loglog(radii: Sequence, counts: Sequence[int]) -> ScalingFit:
    """Least-squares line through ``(log r, log count)``."""
    radii = [to_fraction(r) for r in radii]
    if len(radii) < 4:
        raise InsufficientData("need at least 4 radii")
    if max(radii) < MIN_SPAN * min(radii):
        raise InsufficientData(f"radii must span at least a factor of {MIN_SPAN}")
    if any(c <= 0 for c in counts):
        raise InsufficientData("counts must be positive")
    x = np.log([float(r) for r in radii])
    y = np.log([float(c) for c in counts])
    slope, intercept = np.polyfit(x, y, 1)
    return ScalingFit(float(slope), float(intercept), tuple(radii), tuple(counts))


def scaling_fit(n: int, radii: Sequence, threads: int = 1) -> tuple[ScalingFit, list[CensusReport]]:
    radii = [to_fraction(r) for r in radii]
    if len(radii) < 4 or max(radii) < MIN_SPAN * min(radii):
        raise InsufficientData(f"need at least 4 radii spanning a factor of {MIN_SPAN}")
    reports = [census(n, r, threads=threads) for r in radii]
    return fit_loglog(radii, [rep.h_count for rep in reports]), reports


# ---------------------------------------------------------------------------
# unit ball volume and the minima of orthogonal lattices


def unit_ball_volume(n: int) -> tuple[mpmath.mpf, Fraction, Fraction]:
    """``ω_n = π^{n/2} / Γ(n/2 + 1)`` at 50 digits, with rational bounds.

    Returns ``(value, lower, upper)`` where ``lower < ω_n < upper``.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    with mpmath.workdps(60):
        value = mpmath.pi ** (mpmath.mpf(n) / 2) / mpmath.gamma(mpmath.mpf(n) / 2 + 1)
        man, exp = value.man, value.exp
    exact = Fraction(man) * (Fraction(2) ** exp)
    slack = Fraction(1, 10**45)
    return value, exact - slack, exact + slack


def minkowski_second_holds(v: Sequence[int], minima) -> bool:
    """``λ_1(v)...λ_{n-1}(v) <= 2^{n-1} |v| / ω_{n-1}``, exact via squares."""
    n = len(v)
    _, _, omega_up = unit_ball_volume(n - 1)
    lhs = math.prod(m.square for m in minima) * omega_up * omega_up
    rhs = Fraction(4 ** (n - 1) * sum(x * x for x in v))
    return lhs <= rhs


@dataclass(frozen=True)
class ClaimStats:
    n: int
    rho: Fraction
    threshold: Fraction
    samples: tuple  # (v, λ_1(v)²) pairs
    exceed_count: int
    quantiles: dict
    minkowski_violations: int
    primitive_floor: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "rho": format_fraction(self.rho),
            "t": format_fraction(self.threshold),
            "sample_count": len(self.samples),
            "exceed_count": self.exceed_count,
            "lambda1_sq_quantiles": {k: format_fraction(v) for k, v in self.quantiles.items()},
            "minkowski_violations": self.minkowski_violations,
            "primitive_floor": self.primitive_floor,
        }


def _nearest_rank(sorted_vals: Sequence[Fraction], q: float) -> Fraction:
    k = max(1, math.ceil(q * len(sorted_vals)))
    return sorted_vals[k - 1]


def claim_stats(n: int, rho, t, sample: Optional[int] = None, seed: int = 0) -> ClaimStats:
    """λ_1 of ``L(v)`` for primitive v with ``|v| <= ρ``.

    v and -v share their orthogonal lattice, so one representative per sign
    pair is used.  ``sample`` draws that many representatives with a seeded
    RNG.  Every sample is also checked against Minkowski's second theorem.
    """
    rho, t = to_fraction(rho), to_fraction(t)
    vs = primitive_directions(n, rho)
    if sample is not None and sample < len(vs):
        vs = sorted(random.Random(seed).sample(vs, sample))
    samples = []
    violations = 0
    for v in vs:
        minima = minima_of_sublattice(orthogonal_lattice(v))
        samples.append((v, minima[0].square))
        if not minkowski_second_holds(v, minima):
            violations += 1
    vals = sorted(s for _, s in samples)
    quantiles = {q: _nearest_rank(vals, float(q)) for q in ("0", "0.25", "0.5", "0.75", "1")} if vals else {}
    exceed = sum(1 for s in vals if s >= t * t)
    omega = float(unit_ball_volume(n)[0])
    zeta = float(mpmath.zeta(n)) if n > 1 else float("inf")
    floor = omega * float(rho) ** n / (2 * zeta)
    return ClaimStats(n, rho, t, tuple(samples), exceed, quantiles, violations, floor)
