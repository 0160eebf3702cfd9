"""Brute-force ground truth for g(C) and h(C) on small bodies.

``g``: fewest hyperplanes through 0 covering ``C ∩ Z^n`` (exact set cover by
branch and bound).  ``h``: most lattice points of C with no n of them linearly
dependent (exact maximum search).  Both collapse points to primitive
directions first: coverage and linear dependence only see the line through 0.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InstanceTooLarge, SandwichViolation
from .exact import rank
from .geometry import Body
from .lattice import Hyperplane, canonical_normal, enumerate_points, integer_kernel, normal_of

DEFAULT_CAP = 2000
MAX_CANDIDATES = 200_000


@dataclass(frozen=True)
class OracleResult:
    value: int
    witness: tuple
    instance_size: int

    def to_dict(self) -> dict:
        items = [list(h.normal) if isinstance(h, Hyperplane) else list(h) for h in self.witness]
        return {"value": self.value, "witness": items, "instance_size": self.instance_size}


def _instance(body: Body, cap: int):
    box_points = enumerate_points(body, 1)
    if len(box_points) > cap:
        raise InstanceTooLarge(f"{len(box_points)} lattice points exceed the oracle cap of {cap}")
    directions = sorted({canonical_normal(x) for x in box_points if any(x)})
    return box_points, directions


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# g: minimum hyperplane cover


def _set_cover(universe: int, sets: Sequence[int]) -> list[int]:
    """Indices of a minimum subfamily of bitmask ``sets`` covering ``universe``.

    Lower bound per node: each uncovered element e is charged ``1/m_e`` where
    ``m_e`` is the largest number of uncovered elements any set through e
    still covers; a set collects at most 1 in charges, so the total charge
    bounds the number of sets needed.  Branching picks the uncovered element
    with the fewest covering sets.
    """
    covering = {}
    for b in range(universe.bit_length()):
        if universe >> b & 1:
            covering[b] = [i for i, m in enumerate(sets) if m >> b & 1]

    def greedy(left: int) -> list[int]:
        out = []
        while left:
            i = max(range(len(sets)), key=lambda j: ((sets[j] & left).bit_count(), -j))
            out.append(i)
            left &= ~sets[i]
        return out

    best = greedy(universe)

    def search(left: int, chosen: list[int]):
        nonlocal best
        if not left:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        gains = [(m & left).bit_count() for m in sets]
        open_elems = [b for b in covering if left >> b & 1]
        charge = sum(Fraction(1, max(gains[j] for j in covering[b])) for b in open_elems)
        if len(chosen) + math.ceil(charge) >= len(best):
            return
        elem = min(open_elems, key=lambda b: (len(covering[b]), b))
        options = sorted(covering[elem], key=lambda j: (-gains[j], j))
        for j in options:
            chosen.append(j)
            search(left & ~sets[j], chosen)
            chosen.pop()
            if len(chosen) + 1 >= len(best):
                return

    search(universe, [])
    return sorted(best)


def exact_g(body: Body, cap: int = DEFAULT_CAP) -> OracleResult:
    """Minimum number of proper subspaces covering ``C ∩ Z^n``.

    Any proper subspace sits inside a hyperplane, so hyperplanes suffice; and
    when the points span R^n an optimal cover can use only hyperplanes spanned
    by n-1 of the points.
    """
    n = body.dim
    points, dirs = _instance(body, cap)
    if not dirs:
        h = Hyperplane(tuple(int(i == 0) for i in range(n)))
        return OracleResult(1, (h,), len(points))
    if rank(dirs) < n:
        h = Hyperplane.from_normal(integer_kernel(dirs, n)[0])
        return OracleResult(1, (h,), len(points))
    if n == 2:
        hs = tuple(sorted(Hyperplane.from_normal((-d[1], d[0])) for d in dirs))
        return OracleResult(len(hs), hs, len(points))
    candidates = set()
    for count, combo in enumerate(itertools.combinations(dirs, n - 1)):
        if count > MAX_CANDIDATES:
            raise InstanceTooLarge("too many candidate hyperplanes")
        v = normal_of(combo)
        if any(v):
            candidates.add(canonical_normal(v))
    normals = sorted(candidates)
    masks = []
    for v in normals:
        mask = 0
        for i, d in enumerate(dirs):
            if _dot(v, d) == 0:
                mask |= 1 << i
        masks.append(mask)
    chosen = _set_cover((1 << len(dirs)) - 1, masks)
    hs = tuple(Hyperplane(normals[i]) for i in chosen)
    return OracleResult(len(hs), hs, len(points))


# ---------------------------------------------------------------------------
# h: maximum general-position subset


def _max_general_position(dirs: list[tuple[int, ...]], n: int, cover: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Maximum n-wise independent subset of pairwise non-parallel vectors.

    ``cover`` is any family of hyperplane normals covering ``dirs``.  A
    hyperplane holds at most n-1 members of a general-position set, which
    bounds how many candidates can still join the current partial set.
    """
    home = [next(k for k, v in enumerate(cover) if _dot(v, d) == 0) for d in dirs]
    on = [[k for k, v in enumerate(cover) if _dot(v, d) == 0] for d in dirs]
    best: list[int] = []

    def bound(load, cands):
        per = {}
        for c in cands:
            per[home[c]] = per.get(home[c], 0) + 1
        return sum(min(n - 1 - load[k], cnt) for k, cnt in per.items())

    ceiling = bound([0] * len(cover), range(len(dirs)))

    def extend(chosen, load, cands):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        for pos, c in enumerate(cands):
            if len(best) == ceiling or len(chosen) + bound(load, cands[pos:]) <= len(best):
                return
            rest = cands[pos + 1 :]
            x = dirs[c]
            blocked = [normal_of([dirs[i] for i in sub] + [x]) for sub in itertools.combinations(chosen, n - 2)]
            for k in on[c]:
                load[k] += 1
            nxt = [y for y in rest if load[home[y]] < n - 1 and all(_dot(v, dirs[y]) != 0 for v in blocked)]
            chosen.append(c)
            extend(chosen, load, nxt)
            chosen.pop()
            for k in on[c]:
                load[k] -= 1

    extend([], [0] * len(cover), list(range(len(dirs))))
    return [dirs[i] for i in sorted(best)]


def exact_h(body: Body, cap: int = DEFAULT_CAP) -> OracleResult:
    """Maximum size of a subset of ``C ∩ Z^n`` with every n members independent.

    Representatives are the primitive vectors of each direction (they lie in C
    by convexity and symmetry).  Fewer than n points are in general position
    vacuously, so the answer is at least ``min(n-1, |C ∩ Z^n|)``.
    """
    n = body.dim
    points, dirs = _instance(body, cap)
    if n == 2 or len(dirs) < n:
        best = list(dirs)
    else:
        cover = [h.normal for h in exact_g(body, cap).witness]
        best = _max_general_position(dirs, n, cover)
    if len(best) < min(n - 1, len(points)):
        best = points[: min(n - 1, len(points))]
    return OracleResult(len(best), tuple(best), len(points))


@dataclass(frozen=True)
class SandwichReport:
    n: int
    h: int
    g: int
    certificate_size: Optional[int] = None
    cover_size: Optional[int] = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "h": self.h,
            "g": self.g,
            "certificate_size": self.certificate_size,
            "cover_size": self.cover_size,
        }


def check_sandwich(body: Body, certificate=None, cover=None, cap: int = DEFAULT_CAP) -> SandwichReport:
    """Check ``|cert| <= h <= (n-1) g <= (n-1) |cover|`` exactly.

    ``certificate`` and ``cover`` are optional constructions for the same body.
    Raises :class:`SandwichViolation` if any link fails.
    """
    n = body.dim
    h = exact_h(body, cap).value
    g = exact_g(body, cap).value
    cert_size = len(certificate.points) if certificate is not None else None
    cover_size = cover.size if cover is not None else None
    if h > (n - 1) * g:
        raise SandwichViolation(f"h={h} > (n-1) g={(n - 1) * g}")
    if cert_size is not None and cert_size > h:
        raise SandwichViolation(f"certificate of size {cert_size} beats the exact h={h}")
    if cover_size is not None and cover_size < g:
        raise SandwichViolation(f"cover of size {cover_size} beats the exact g={g}")
    return SandwichReport(n, h, g, cert_size, cover_size)
