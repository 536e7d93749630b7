"""Command line driver.

    hamming-commutator verify [--d A..B] [--r A..B] [--suites LIST] [--size-cap N]
                              [--force] [--format json|csv] [--out PATH] [--jobs N]
    hamming-commutator eigentable --d N --r N

``verify`` exits 0 when every check passes, 1 when any fails and 2 on usage
errors. Fractions are written as exact strings, never floats.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .commutator import (
    CommutatorMismatchError,
    commutator_checks,
    eigenvalue,
    predicted_dimension,
    spectrum,
)
from .complete_graph import build_kr, verify_kr
from .hamming import (
    DEFAULT_SIZE_CAP,
    DistanceRegularityError,
    axiom_checks,
    build_hamming,
    invertibility_checks,
    parameter_tables,
)
from .split_decomposition import split_checks
from .tmodule import tmodule_checks

SCHEMA_VERSION = 1
SUITES = ("kr", "hamming", "split", "commutator", "tmodule")
DEFAULT_D = (1, 4)
DEFAULT_R = (3, 5)


@dataclass(frozen=True)
class RunConfig:
    d_range: tuple[int, int] = DEFAULT_D
    r_range: tuple[int, int] = DEFAULT_R
    size_cap: int = DEFAULT_SIZE_CAP
    suites: tuple[str, ...] = SUITES
    output_format: str = "json"
    output_path: str | None = None
    jobs: int = 1
    force: bool = False
    explicit_grid: bool = False


class UsageError(ValueError):
    pass


def grid(config: RunConfig) -> list[tuple[int, int]]:
    """Cells of the run. Oversized cells are dropped from the default grid
    but are a usage error when the ranges were given explicitly."""
    d0, d1 = config.d_range
    r0, r1 = config.r_range
    if d0 < 1 or d0 > d1:
        raise UsageError(f"bad D range {d0}..{d1}")
    if r0 < 3 or r0 > r1:
        raise UsageError(f"bad r range {r0}..{r1} (r must be at least 3)")
    cells = []
    for D in range(d0, d1 + 1):
        for r in range(r0, r1 + 1):
            if r ** D > config.size_cap and not config.force:
                if config.explicit_grid:
                    raise UsageError(
                        f"H({D},{r}) has {r ** D} vertices, over the size cap "
                        f"{config.size_cap}; use --size-cap or --force")
                continue
            cells.append((D, r))
    return cells


# -- one cell -----------------------------------------------------------------------

def _entries(checks: dict[str, bool], details: dict[str, str] | None = None) -> list[dict]:
    details = details or {}
    out = []
    for k, ok in checks.items():
        e = {"id": k, "pass": bool(ok)}
        if k in details:
            e["detail"] = details[k]
        out.append(e)
    return out


def frac(x: Fraction) -> str:
    return str(Fraction(x))


def run_cell(D: int, r: int, suites, force: bool = False, size_cap: int = DEFAULT_SIZE_CAP) -> dict:
    start = time.perf_counter()
    ctx = build_hamming(D, r, size_cap, force=force, verify=False)
    results: dict[str, dict] = {}

    if "kr" in suites:
        rep = verify_kr(build_kr(r))
        checks = dict(rep.flags)
        got = sorted(rep.commutator_eigendata)
        want = sorted([(Fraction(1 - r), 1), (1 / Fraction(1 - r), 1), (Fraction(1), r - 2)])
        checks["commutator_eigendata"] = got == want
        checks["dim_T_is_5"] = rep.dim_T == 5
        results["kr"] = {"checks": _entries(checks)}

    if "hamming" in suites:
        checks = axiom_checks(ctx)
        checks.update(invertibility_checks(ctx))
        details = {}
        try:
            checks.update(parameter_tables(ctx).checks)
        except DistanceRegularityError as exc:
            checks["A_product_expansion"] = False
            details["A_product_expansion"] = str(exc)
        results["hamming"] = {"checks": _entries(checks, details)}

    if "split" in suites:
        results["split"] = {"checks": _entries(split_checks(ctx))}

    spec = None
    computed = {}
    if "commutator" in suites or "tmodule" in suites:
        try:
            checks = commutator_checks(ctx)
            details = {}
            if checks.get("direct_equals_kron_power"):
                spec = spectrum(ctx)
                computed = {s: e.computed_dim for s, e in spec.eigendata.items()}
                details = {k: "offending s: " + ", ".join(map(str, v))
                           for k, v in spec.failures.items()}
        except CommutatorMismatchError as exc:
            checks, details = {"direct_equals_kron_power": False}, {
                "direct_equals_kron_power": str(exc)}
        if "commutator" in suites:
            results["commutator"] = {"checks": _entries(checks, details)}

    if "tmodule" in suites:
        if spec is None:
            results["tmodule"] = {"checks": [{"id": "commutator_available", "pass": False}]}
        else:
            checks, survey = tmodule_checks(ctx, spec)
            details = {}
            if "harvest_spans_each_V_eta" not in checks:
                details["coverage"] = "; ".join(
                    f"eta={e}: {a}/{b}" for e, (a, b) in survey.coverage.items())
            results["tmodule"] = {
                "checks": _entries(checks, details),
                "harvest": {
                    "seeds": survey.n_seeds,
                    "modules": len(survey.modules),
                    "patterns": [{"endpoint": k[0], "dual_endpoint": k[1], "diameter": k[2],
                                  "count": c} for k, c in survey.patterns().items()],
                    "coverage": [{"eta": e, "harvested_dim": a, "dim": b}
                                 for e, (a, b) in survey.coverage.items()],
                },
            }

    table = [{"s": s, "eigenvalue": frac(eigenvalue(r, s)),
              "predicted_dim": predicted_dimension(D, r, s),
              "computed_dim": computed.get(s)}
             for s in range(-D, D + 1)]
    return {"D": D, "r": r, "suites": results, "eigentable": table,
            "timing_ms": round((time.perf_counter() - start) * 1000)}


def _run_cell_args(args):
    return run_cell(*args)


def run(config: RunConfig) -> tuple[dict, int]:
    cells = grid(config)
    args = [(D, r, config.suites, config.force, config.size_cap) for D, r in cells]
    if config.jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            # map keeps submission order, so output is deterministic
            results = list(pool.map(_run_cell_args, args))
    else:
        results = [_run_cell_args(a) for a in args]
    report = {"schema_version": SCHEMA_VERSION, "cells": results}
    return report, (0 if report_passed(report) else 1)


def report_passed(report: dict) -> bool:
    return all(c["pass"] for cell in report["cells"]
               for suite in cell["suites"].values() for c in suite["checks"])


def failed_checks(report: dict) -> list[str]:
    return [f"H({cell['D']},{cell['r']}) {name}: {c['id']}"
            for cell in report["cells"] for name, suite in cell["suites"].items()
            for c in suite["checks"] if not c["pass"]]


# -- output -------------------------------------------------------------------------

def emit_json(report: dict) -> str:
    return json.dumps(report, indent=2) + "\n"


CSV_FIELDS = ["schema_version", "D", "r", "suite", "check", "pass", "detail"]


def emit_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for cell in report["cells"]:
        for name, suite in cell["suites"].items():
            for c in suite["checks"]:
                w.writerow({"schema_version": report["schema_version"], "D": cell["D"],
                            "r": cell["r"], "suite": name, "check": c["id"],
                            "pass": "true" if c["pass"] else "false",
                            "detail": c.get("detail", "")})
    return buf.getvalue()


def format_eigentable(D: int, r: int) -> str:
    rows = [(s, frac(eigenvalue(r, s)), predicted_dimension(D, r, s)) for s in range(-D, D + 1)]
    width = max(len(v) for _, v, _ in rows + [(0, "eigenvalue", 0)])
    lines = [f"{'s':>4}  {'eigenvalue':>{width}}  dimension"]
    lines += [f"{s:>4}  {v:>{width}}  {d}" for s, v, d in rows]
    total = sum(d for _, _, d in rows)
    lines.append(f"total {total} (r^D = {r ** D})")
    return "\n".join(lines) + "\n"


# -- argument parsing ---------------------------------------------------------------

def parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            return int(a), int(b)
        v = int(text)
        return v, v
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None


def parse_suites(text: str) -> tuple[str, ...]:
    names = [s.strip() for s in text.split(",") if s.strip()]
    bad = [s for s in names if s not in SUITES]
    if bad or not names:
        raise argparse.ArgumentTypeError(
            f"unknown suite(s) {', '.join(bad) or '(none)'}; choose from {','.join(SUITES)}")
    return tuple(s for s in SUITES if s in names)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hamming-commutator",
                                description="Exact verification for H(D, r) and its commutator.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run certificate suites over a (D, r) grid")
    v.add_argument("--d", type=parse_range, help="D range, N or A..B (default 1..4)")
    v.add_argument("--r", type=parse_range, help="r range, N or A..B (default 3..5)")
    v.add_argument("--suites", type=parse_suites, default=SUITES,
                   help=f"comma list from {','.join(SUITES)} (default all)")
    v.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP,
                   help="maximum r^D (default %(default)s)")
    v.add_argument("--force", action="store_true", help="ignore the size cap")
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--out", help="write the report here instead of stdout")
    v.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")

    e = sub.add_parser("eigentable", help="commutator eigenvalues and dimensions from the formula")
    e.add_argument("--d", type=int, required=True)
    e.add_argument("--r", type=int, required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "eigentable":
        if args.d < 1 or args.r < 3:
            parser.error("eigentable needs D >= 1 and r >= 3")
        sys.stdout.write(format_eigentable(args.d, args.r))
        return 0

    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    config = RunConfig(
        d_range=args.d or DEFAULT_D, r_range=args.r or DEFAULT_R,
        size_cap=args.size_cap, suites=args.suites, output_format=args.format,
        output_path=args.out, jobs=args.jobs, force=args.force,
        explicit_grid=args.d is not None or args.r is not None)
    try:
        grid(config)
    except UsageError as exc:
        parser.error(str(exc))

    report, code = run(config)
    text = emit_json(report) if config.output_format == "json" else emit_csv(report)
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for line in failed_checks(report):
        print(f"FAILED {line}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
