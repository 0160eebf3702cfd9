"""Command-line entry point: ``latcover <command> [options]``.

Results go to stdout (or ``--out``) as JSON with sorted keys, so a fixed seed
gives byte-identical output whatever ``--threads`` is.  Exit codes: 0 on
success, 2 when a verification step fails, 1 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .census import CSV_HEADER, census, claim_stats, scaling_fit
from .cover import build_cover
from .errors import LatticeCoverError, VerificationFailed
from .exact import format_fraction, to_fraction
from .genpos import build_general_position, lower_bound, verify_general_position
from .geometry import load_body
from .lattice import successive_minima
from .oracle import DEFAULT_CAP, exact_g, exact_h
from .repro import SUITES, run_suite


@dataclass
class ExperimentConfig:
    command: str
    action: Optional[str] = None
    body: Optional[str] = None
    points: Optional[str] = None
    prime: Optional[int] = None
    m: str = "auto"
    n: Optional[int] = None
    r: Optional[str] = None
    radii: Sequence[str] = ()
    claim: bool = False
    rho: Optional[str] = None
    t: str = "1"
    sample: Optional[int] = None
    csv: Optional[str] = None
    cap: int = DEFAULT_CAP
    suite: Optional[str] = None
    seed: int = 0
    threads: int = field(default_factory=lambda: os.cpu_count() or 1)
    out: Optional[str] = None
    budget: Optional[int] = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1, help="worker threads")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--out", help="write the JSON result here instead of stdout")
    common.add_argument("--budget", type=int, help="grid-point cap per enumeration")

    parser = _Parser(prog="latcover", description="Lattice points of convex bodies: minima, general position, covers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("minima", parents=[common], help="exact successive minima")
    p.add_argument("--body", required=True)

    p = sub.add_parser("genpos", parents=[common], help="general-position certificate, or verify a point set")
    p.add_argument("action", nargs="?", choices=["build", "verify"], default="build")
    p.add_argument("--body")
    p.add_argument("--prime", type=int)
    p.add_argument("--points")

    p = sub.add_parser("cover", parents=[common], help="hyperplane cover of the lattice points")
    p.add_argument("--body", required=True)
    p.add_argument("--m", default="auto", help="integer m in (0, n) or 'auto'")

    p = sub.add_parser("census", parents=[common], help="hyperplanes spanned by lattice points of a ball")
    p.add_argument("action", nargs="?", choices=["report", "scan"], default="report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r")
    p.add_argument("--radii", help="comma-separated radii for scan")
    p.add_argument("--csv", help="CSV output path for scan (default stdout)")
    p.add_argument("--claim", action="store_true", help="add orthogonal-lattice statistics")
    p.add_argument("--rho")
    p.add_argument("--t", default="1")
    p.add_argument("--sample", type=int)

    p = sub.add_parser("oracle", parents=[common], help="brute-force g or h on a small body")
    p.add_argument("action", choices=["g", "h"])
    p.add_argument("--body", required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = sub.add_parser("repro", parents=[common], help="run a named acceptance bundle")
    p.add_argument("suite", choices=SUITES)
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> ExperimentConfig:
    args = build_parser().parse_args(argv)
    cfg = ExperimentConfig(command=args.command)
    for key, value in vars(args).items():
        if key == "radii" and value is not None:
            value = [s.strip() for s in value.split(",") if s.strip()]
        if value is not None and hasattr(cfg, key):
            setattr(cfg, key, value)
    return cfg


def _need(value, flag: str):
    if value is None:
        raise ValueError(f"{flag} is required here")
    return value


def _rational(text: str, flag: str) -> Fraction:
    try:
        return to_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"{flag}: cannot parse {text!r} as a rational") from exc


def _minima(cfg):
    prof = successive_minima(load_body(cfg.body), cfg.budget)
    return {"lambda": [str(v) for v in prof.minima], "witnesses": [list(w) for w in prof.witnesses]}, 0


def _genpos(cfg):
    if cfg.action == "verify":
        path = _need(cfg.points, "--points")
        try:
            with open(path) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: invalid JSON ({exc})") from exc
        pts = data["points"] if isinstance(data, dict) else data
        if not pts:
            raise ValueError("no points given")
        n = len(pts[0])
        ok = verify_general_position(pts, n)
        return {"n": n, "count": len(pts), "general_position": ok}, 0 if ok else 2
    body = load_body(_need(cfg.body, "--body"))
    prof = successive_minima(body, cfg.budget)
    cert = build_general_position(body, prime=cfg.prime, profile=prof, threads=cfg.threads)
    out = {
        "p": cert.p,
        "size": len(cert.points),
        "points": [list(x) for x in cert.points],
        "lifts": [
            {"index": lf.index, "j": lf.j, "w": list(lf.w), "point": list(lf.point)} for lf in cert.lifts
        ],
    }
    if prof.minima[-1] <= 1:
        rep = lower_bound(prof)
        out["bound"] = {"lower": format_fraction(rep.bound[0]), "upper": format_fraction(rep.bound[1])}
    return out, 0


def _cover(cfg):
    fam = build_cover(load_body(cfg.body), m=cfg.m, budget=cfg.budget)
    out = {"normals": [list(h.normal) for h in fam.hyperplanes], "diagnostics": fam.diagnostics()}
    out["nu"] = [format_fraction(v) for v in fam.nu]
    out["witnesses"] = [list(w) for w in fam.witnesses]
    return out, 0


def _census(cfg, stdout):
    if cfg.action == "scan":
        radii = _need(cfg.radii or None, "--radii")
        radii = [_rational(r, "--radii") for r in radii]
        fit, reports = scaling_fit(cfg.n, radii, cfg.threads)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rep in reports:
            writer.writerow(rep.csv_row())
        if cfg.csv:
            with open(cfg.csv, "w", newline="") as fh:
                fh.write(buf.getvalue())
        else:
            stdout.write(buf.getvalue())
        return {"n": cfg.n, "rows": len(reports), "slope": fit.slope, "expected_slope": cfg.n * (cfg.n - 1)}, 0
    r = _rational(_need(cfg.r, "--r"), "--r")
    out = census(cfg.n, r, threads=cfg.threads).to_dict()
    if cfg.claim:
        rho = _rational(_need(cfg.rho, "--rho"), "--rho")
        stats = claim_stats(cfg.n, rho, _rational(cfg.t, "--t"), sample=cfg.sample, seed=cfg.seed)
        out["claim"] = stats.to_dict()
    return out, 0


def _oracle(cfg):
    fn = exact_g if cfg.action == "g" else exact_h
    return fn(load_body(cfg.body), cfg.cap).to_dict(), 0


def _repro(cfg):
    report = run_suite(cfg.suite, threads=cfg.threads, seed=cfg.seed)
    for c in report.checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}", file=sys.stderr)
    return report.to_dict(), 0 if report.passed else 2


def run(cfg: ExperimentConfig, stdout=None) -> int:
    """Dispatch one command; returns the process exit code."""
    stdout = stdout or sys.stdout
    saved = os.environ.get("LATTICE_COVER_BUDGET")
    if cfg.budget is not None:
        os.environ["LATTICE_COVER_BUDGET"] = str(cfg.budget)
    try:
        if cfg.command == "minima":
            result, code = _minima(cfg)
        elif cfg.command == "genpos":
            result, code = _genpos(cfg)
        elif cfg.command == "cover":
            result, code = _cover(cfg)
        elif cfg.command == "census":
            result, code = _census(cfg, stdout)
        elif cfg.command == "oracle":
            result, code = _oracle(cfg)
        elif cfg.command == "repro":
            result, code = _repro(cfg)
        else:
            raise ValueError(f"unknown command {cfg.command!r}")
    except VerificationFailed as exc:
        print(f"verification failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (LatticeCoverError, ValueError, KeyError, TypeError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    finally:
        # the override is scoped to this run
        if cfg.budget is not None:
            if saved is None:
                os.environ.pop("LATTICE_COVER_BUDGET", None)
            else:
                os.environ["LATTICE_COVER_BUDGET"] = saved
    text = json.dumps(result, sort_keys=True, indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    elif not (cfg.command == "census" and cfg.action == "scan" and not cfg.csv):
        stdout.write(text)
    else:
        print(text, end="", file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(parse_config(argv))


if __name__ == "__main__":
    sys.exit(main())
