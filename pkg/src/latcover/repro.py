"""Named experiment bundles with a pass/fail verdict per check.

Every suite is deterministic: randomized parts draw from ``random.Random(seed)``
and no timings enter the result, so two runs with the same seed produce
identical JSON whatever the thread count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .census import census, claim_stats, decomposition_replay, scaling_fit
from .cover import build_cover, mahler_products, polar_minima
from .errors import NoLiftFound, SandwichViolation
from .exact import GaugeValue, format_fraction
from .genpos import (
    build_general_position,
    is_prime,
    largest_admissible_prime,
    lemma_lift,
    lower_bound,
    verify_general_position,
)
from .geometry import Body, contains
from .lattice import successive_minima
from .oracle import check_sandwich, exact_g, exact_h

SUITES = ("remark1", "halasz-ball", "theorem2-coverage", "theorem3-scaling", "corollary-sr")


@dataclass
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class SuiteReport:
    suite: str
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _minima_strs(profile) -> list[str]:
    return [str(m) for m in profile.minima]


def minima_checks() -> list[Check]:
    out = []
    for n in (2, 3, 4):
        for r in (2, 4, 10):
            prof = successive_minima(Body.ball(r, n))
            want = [GaugeValue.rational(Fraction(1, r))] * n
            out.append(Check(f"minima ball r={r} n={n}", list(prof.minima) == want, {"lambda": _minima_strs(prof)}))
    for n in (2, 3):
        for x in (2, 5, 10):
            prof = successive_minima(Body.cube_slab(x, n))
            want = [GaugeValue.rational(Fraction(1, x))] * (n - 1) + [GaugeValue.rational(1)]
            out.append(Check(f"minima slab x={x} n={n}", list(prof.minima) == want, {"lambda": _minima_strs(prof)}))
    return out


def slab_oracle_checks() -> list[Check]:
    out = []
    body = Body.cross_slab(5, 3)
    g, h = exact_g(body).value, exact_h(body).value
    out.append(Check("cross slab x=5 n=3: g=2, h=3", g == 2 and h == 3, {"g": g, "h": h}))
    for x in (2, 3, 4):
        body = Body.cube_slab(x, 2)
        g, h = exact_g(body).value, exact_h(body).value
        ok = g >= 2 * x and 2 * h >= x
        out.append(Check(f"cube slab x={x} n=2: g>=2x, h>=x/2", ok, {"g": g, "h": h}))
    return out


def ball_certificate_checks() -> list[Check]:
    out = []
    for r in (25, 50, 100):
        body = Body.ball(r, 2)
        prof = successive_minima(body)
        report = lower_bound(prof)
        cert = build_general_position(body, profile=prof)
        inside = all(contains(body, x) for x in cert.points)
        gp = verify_general_position(cert.points, 2)
        size = len(cert.points)
        ok = inside and gp and size == cert.p + 1 and size > report.bound[1]
        out.append(
            Check(
                f"general position ball r={r} n=2",
                ok,
                {"p": cert.p, "size": size, "bound": format_fraction(report.bound[1])},
            )
        )
    return out


def _random_body(rng: random.Random) -> Body:
    n = rng.choice((2, 3))
    lo = 12 if n == 2 else 32
    family = rng.choice(("ball", "box", "crosspolytope", "ellipsoid"))
    if family == "ball":
        return Body.ball(Fraction(rng.randint(lo * 4, lo * 12), 4), n)
    if family == "box":
        return Body.box([Fraction(rng.randint(lo * 4, lo * 12), 4) for _ in range(n)])
    if family == "crosspolytope":
        return Body.cross_polytope([Fraction(rng.randint(lo * n * 4, lo * n * 12), 4) for _ in range(n)])
    # ellipsoid x^T A x <= 1 with A = D + small symmetric perturbation
    diag = [Fraction(1, rng.randint(lo * lo, 9 * lo * lo)) for _ in range(n)]
    a = [[diag[i] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    i, j = rng.sample(range(n), 2)
    off = min(diag[i], diag[j]) / rng.randint(3, 9)
    a[i][j] = a[j][i] = off
    return Body.ellipsoid(a)


def random_lift_trials(count: int = 200, seed: int = 0) -> Check:
    """Lift random vectors with random admissible primes; no search may fail."""
    rng = random.Random(seed)
    failures, done, bodies = [], 0, {}
    while done < count:
        body = _random_body(rng)
        key = str(body)
        if key not in bodies:
            prof = successive_minima(body)
            bodies[key] = largest_admissible_prime(lower_bound(prof)) if prof.minima[-1] < 1 else None
        pmax = bodies[key]
        if pmax is None:
            continue
        p = rng.choice([q for q in range(2, pmax + 1) if is_prime(q)])
        v = tuple(rng.randint(-10 * p, 10 * p) for _ in range(body.dim))
        try:
            lemma_lift(body, v, p)
        except NoLiftFound:
            failures.append({"body": key, "v": list(v), "p": p})
        done += 1
    return Check(f"lift {count} random vectors", not failures, {"failures": failures[:5], "seed": seed})


def coverage_checks() -> list[Check]:
    out = []
    bodies = [(f"ball r={r} n={n}", Body.ball(r, n)) for n in (2, 3) for r in (2, 4, 8)]
    bodies.append(("cross slab x=5 n=3", Body.cross_slab(5, 3)))
    for name, body in bodies:
        fam = build_cover(body)
        n, k, a, f = body.dim, fam.k, fam.alpha, fam.f_alpha
        ok = f > 2 * k * a + 1 and 32 <= f and fam.size <= 2**k * f
        out.append(Check(f"cover {name}", ok, fam.diagnostics()))
    return out


def fixture_bodies() -> list[tuple[str, Body]]:
    """Small polar-capable bodies shared by property checks and demos."""
    return [
        ("ball r=2 n=2", Body.ball(2, 2)),
        ("ball r=5/2 n=3", Body.ball(Fraction(5, 2), 3)),
        ("ball r=3 n=4", Body.ball(3, 4)),
        ("box (3,7/2,1)", Body.box([3, Fraction(7, 2), 1])),
        ("cube slab x=4 n=3", Body.cube_slab(4, 3)),
        ("cross slab x=5 n=3", Body.cross_slab(5, 3)),
        ("cross polytope (4,6)", Body.cross_polytope([4, 6])),
        ("ellipsoid 2x2", Body.ellipsoid([[Fraction(1, 9), Fraction(1, 30)], [Fraction(1, 30), Fraction(1, 16)]])),
        (
            "ellipsoid 3x3",
            Body.ellipsoid(
                [
                    [Fraction(1, 4), 0, Fraction(1, 20)],
                    [0, Fraction(1, 25), 0],
                    [Fraction(1, 20), 0, Fraction(1, 9)],
                ]
            ),
        ),
    ]


def mahler_checks() -> list[Check]:
    out = []
    for name, body in fixture_bodies():
        prods = mahler_products(successive_minima(body), polar_minima(body))
        out.append(Check(f"mahler {name}", all(p >= 1 for p in prods), {"products": [str(p) for p in prods]}))
    return out


def scaling_checks(threads: int = 1) -> list[Check]:
    out = []
    fit2, reps2 = scaling_fit(2, [10, 20, 40, 80], threads)
    out.append(Check("slope n=2 in [1.9, 2.1]", 1.9 <= fit2.slope <= 2.1, {"slope": round(fit2.slope, 6)}))
    ratio = reps2[-1].ratio
    out.append(Check("ratio n=2 r=80 in [0.9, 1.0]", 0.9 <= ratio <= 1.0, {"ratio": ratio}))
    fit3, _ = scaling_fit(3, [4, 6, 8, 10], threads)
    out.append(Check("slope n=3 in [5.5, 6.5]", 5.5 <= fit3.slope <= 6.5, {"slope": round(fit3.slope, 6)}))
    return out


def load_checks(threads: int = 1, seed: int = 0) -> list[Check]:
    out = []
    loads = {r: census(2, r, threads=threads).s_r for r in (10, 20, 40, 80)}
    ok = all(3 <= s <= 6 for s in loads.values())
    out.append(Check("s_r n=2 within [3, 6]", ok, {str(r): format_fraction(s) for r, s in loads.items()}))
    for n, radii in ((2, range(1, 21)), (3, range(1, 5))):
        sides = {r: decomposition_replay(n, r) for r in radii}
        bad = [r for r, (a, b) in sides.items() if a != b]
        out.append(Check(f"decomposition replay n={n} r<={max(radii)}", not bad, {"mismatch": bad}))
    stats = claim_stats(3, 10, 1, sample=500, seed=seed)
    out.append(
        Check(
            "minkowski second theorem on 500 orthogonal lattices n=3 rho=10",
            stats.minkowski_violations == 0 and len(stats.samples) == 500,
            {"violations": stats.minkowski_violations},
        )
    )
    return out


def sandwich_checks() -> list[Check]:
    out = []
    cases = [
        ("ball r=1 n=2", Body.ball(1, 2), False, False),
        ("ball r=2 n=2", Body.ball(2, 2), False, True),
        ("cross slab x=5 n=3", Body.cross_slab(5, 3), False, True),
        ("ball r=2 n=3", Body.ball(2, 3), False, True),
        ("ball r=25 n=2", Body.ball(25, 2), True, True),
    ]
    for name, body, with_cert, with_cover in cases:
        cert = build_general_position(body) if with_cert else None
        fam = build_cover(body) if with_cover else None
        try:
            rep = check_sandwich(body, cert, fam)
        except SandwichViolation as exc:
            out.append(Check(f"sandwich {name}", False, {"error": str(exc)}))
        else:
            out.append(Check(f"sandwich {name}", True, rep.to_dict()))
    return out


def run_suite(name: str, threads: int = 1, seed: int = 0) -> SuiteReport:
    if name == "remark1":
        checks = minima_checks() + slab_oracle_checks()
    elif name == "halasz-ball":
        checks = ball_certificate_checks() + [random_lift_trials(200, seed)]
    elif name == "theorem2-coverage":
        checks = coverage_checks() + mahler_checks() + sandwich_checks()
    elif name == "theorem3-scaling":
        checks = scaling_checks(threads)
    elif name == "corollary-sr":
        checks = load_checks(threads, seed)
    else:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SuiteReport(name, checks)
