"""Acceptance criteria, one test each, at the stated tolerances and time limits.

Each test prints a single ``PASS``/``FAIL`` line.  Run just this file with
``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""

import json
import random
import sys
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from latcover.census import census, claim_stats, decomposition_replay, scaling_fit
from latcover.cover import build_cover, mahler_products, polar_minima
from latcover.errors import NoLiftFound
from latcover.exact import GaugeValue
from latcover.genpos import (
    build_general_position,
    is_prime,
    largest_admissible_prime,
    lemma_lift,
    lower_bound,
    verify_general_position,
)
from latcover.geometry import Body, contains
from latcover.lattice import enumerate_points, successive_minima
from latcover.oracle import check_sandwich, exact_g, exact_h
from latcover.repro import SUITES, _random_body, fixture_bodies, run_suite


def _report(number, title, ok, elapsed, limit, note=""):
    within = elapsed < limit
    verdict = "PASS" if ok and within else "FAIL"
    line = f"[{verdict}] criterion {number:>2}: {title} ({elapsed:.1f}s / {limit}s){' ' + note if note else ''}"
    ACCEPTANCE_LINES.append(line)
    assert ok, line
    assert within, line


def _timed(fn):
    start = time.perf_counter()
    result = fn()
    return result, time.perf_counter() - start


def test_criterion_01_minima_exact():
    def body():
        for n in (2, 3, 4):
            for r in (2, 4, 10):
                if successive_minima(Body.ball(r, n)).minima != (GaugeValue.rational(Fraction(1, r)),) * n:
                    return False
        for n in (2, 3):
            for x in (2, 5, 10):
                want = (GaugeValue.rational(Fraction(1, x)),) * (n - 1) + (GaugeValue.rational(1),)
                if successive_minima(Body.cube_slab(x, n)).minima != want:
                    return False
        return True

    ok, dt = _timed(body)
    _report(1, "successive minima of balls and slabs are exact", ok, dt, 10)


def test_criterion_02_slab_extremes():
    def body():
        cs = Body.cross_slab(5, 3)
        vals = {"g(C'_5)": exact_g(cs).value, "h(C'_5)": exact_h(cs).value}
        ok = vals["g(C'_5)"] == 2 and vals["h(C'_5)"] == 3
        for x in (2, 3, 4):
            slab = Body.cube_slab(x, 2)
            g, h = exact_g(slab).value, exact_h(slab).value
            vals[f"x={x}"] = (g, h)
            ok = ok and g >= 2 * x and 2 * h >= x
        return ok, vals

    (ok, vals), dt = _timed(body)
    _report(2, "g(C'_x)=2, h(C'_x)=n; g(C_x)>=2x, h(C_x)>=x/2", ok, dt, 60, json.dumps(vals))


def test_criterion_03_general_position_construction():
    def body():
        sizes = []
        for r in (25, 50, 100):
            ball = Body.ball(r, 2)
            prof = successive_minima(ball)
            bound = lower_bound(prof).bound[1]
            cert = build_general_position(ball, profile=prof)
            ok = (
                all(contains(ball, x) for x in cert.points)
                and verify_general_position(cert.points, 2)
                and len(cert.points) == cert.p + 1
                and len(cert.points) > bound
            )
            sizes.append((r, len(cert.points), float(bound)))
            if not ok:
                return False, sizes
        return True, sizes

    (ok, sizes), dt = _timed(body)
    _report(3, "ball certificates inside C, in general position, above the bound", ok, dt, 120, str(sizes))


def test_criterion_04_lift_completeness():
    def body():
        rng = random.Random(2024)
        failures, trials, primes = 0, 0, {}
        while trials < 200:
            b = _random_body(rng)
            key = str(b)
            if key not in primes:
                prof = successive_minima(b)
                primes[key] = largest_admissible_prime(lower_bound(prof)) if prof.minima[-1] < 1 else None
            if primes[key] is None:
                continue
            p = rng.choice([q for q in range(2, primes[key] + 1) if is_prime(q)])
            v = tuple(rng.randint(-10 * p, 10 * p) for _ in range(b.dim))
            try:
                j, w, x = lemma_lift(b, v, p)
                assert contains(b, x) and 1 <= j < p
            except NoLiftFound:
                failures += 1
            trials += 1
        return failures

    failures, dt = _timed(body)
    _report(4, "200 random lifts with admissible primes", failures == 0, dt, 120, f"NoLiftFound={failures}")


def test_criterion_05_cover_construction():
    def body():
        cases = [Body.ball(r, n) for n in (2, 3) for r in (2, 4, 8)] + [Body.cross_slab(5, 3)]
        for b in cases:
            fam = build_cover(b)  # verifies coverage exhaustively, raises otherwise
            pts = [x for x in enumerate_points(b) if any(x)]
            if not all(any(h.contains(x) for h in fam.hyperplanes) for x in pts):
                return False
            k, a, f = fam.k, fam.alpha, fam.f_alpha
            if not (f > 2 * k * a + 1 and 32 <= f and fam.size <= 2**k * f):
                return False
        return True

    ok, dt = _timed(body)
    _report(5, "covers verified, threshold chain and size bound hold", ok, dt, 120)


def test_criterion_06_hyperplane_scaling():
    def body():
        fit2, reps2 = scaling_fit(2, [10, 20, 40, 80])
        fit3, _ = scaling_fit(3, [4, 6, 8, 10])
        ratio = reps2[-1].ratio
        ok = 1.9 <= fit2.slope <= 2.1 and 5.5 <= fit3.slope <= 6.5 and 0.9 <= ratio <= 1.0
        return ok, f"slope2={fit2.slope:.4f} slope3={fit3.slope:.4f} ratio80={ratio:.4f}"

    (ok, note), dt = _timed(body)
    _report(6, "|H_r| exponents n(n-1) and the planar density", ok, dt, 600, note)


def test_criterion_07_average_load():
    def body():
        loads = [census(2, r).s_r for r in (10, 20, 40, 80)]
        ok = all(3 <= s <= 6 for s in loads)
        for n, radii in ((2, range(1, 21)), (3, range(1, 5))):
            for r in radii:
                lhs, rhs = decomposition_replay(n, r)
                ok = ok and lhs == rhs
        return ok, "s_r=" + ",".join(f"{float(s):.3f}" for s in loads)

    (ok, note), dt = _timed(body)
    _report(7, "s_r bounded in [3, 6]; decomposition identity exact", ok, dt, 300, note)


def test_criterion_08_sandwich():
    def body():
        cases = [
            (Body.ball(1, 2), False, True),
            (Body.ball(2, 2), False, True),
            (Body.cross_slab(5, 3), False, True),
            (Body.ball(2, 3), False, True),
            (Body.cube_slab(2, 3), False, True),
            (Body.ball(25, 2), True, True),
        ]
        reports = []
        for b, with_cert, with_cover in cases:
            cert = build_general_position(b) if with_cert else None
            fam = build_cover(b) if with_cover and successive_minima(b).minima[-1] <= 1 else None
            rep = check_sandwich(b, cert, fam)
            n = b.dim
            ok = rep.h <= (n - 1) * rep.g
            if cert is not None:
                ok = ok and len(cert.points) <= rep.h
            if fam is not None:
                ok = ok and rep.g <= fam.size
            reports.append((rep.certificate_size, rep.h, (n - 1) * rep.g, None if fam is None else (n - 1) * fam.size))
            if not ok:
                return False, reports
        return True, reports

    (ok, reports), dt = _timed(body)
    _report(8, "|cert| <= h <= (n-1)g <= (n-1)|cover|", ok, dt, 120, str(reports))


def test_criterion_09_exact_laws():
    def body():
        for _, b in fixture_bodies():
            if not all(p >= 1 for p in mahler_products(successive_minima(b), polar_minima(b))):
                return False, "mahler"
        stats = claim_stats(3, 10, 1, sample=500, seed=9)
        return len(stats.samples) == 500 and stats.minkowski_violations == 0, "500 samples"

    (ok, note), dt = _timed(body)
    _report(9, "Mahler products >= 1; Minkowski's second theorem on L(v)", ok, dt, 60, note)


def test_criterion_10_determinism():
    def body():
        for suite in SUITES:
            a = json.dumps(run_suite(suite, threads=1, seed=0).to_dict(), sort_keys=True)
            b = json.dumps(run_suite(suite, threads=4, seed=0).to_dict(), sort_keys=True)
            if a != b:
                return False, suite
        return True, ",".join(SUITES)

    (ok, note), dt = _timed(body)
    _report(10, "repro suites byte-identical across thread counts", ok, dt, 1200, note)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
