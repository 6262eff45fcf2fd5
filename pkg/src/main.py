#!/usr/bin/env python3
"""
mubgeo - Main Application
Command-line entry point: construct, verify, search and export MUBs,
complementarity polytopes, affine planes, MOLS and Wigner functions
"""

import argparse
import logging
import sys
import time
import warnings
from dataclasses import dataclass, field
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from dotenv import load_dotenv

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from affine import AffinePlane, plane_from_field, plane_from_mols, verify_axioms
from config_loader import ConfigLoader
from database import FieldTableCache
from errors import MubGeoError, NotPositive, OrderNotPrimePower, OrderTooLarge
from gf import FieldTable, field_for_order, prime_power
from hspace import to_bloch
from latin import MolsSet, are_orthogonal, mols_from_field, squares_from_text
from mub import MubSet, mub_construct, mub_verify
from polytope import (
    Polytope,
    inscribe_dsimplex,
    polytope_abstract,
    polytope_from_mubs,
    positivity_report,
    random_rotation,
    rotate_polytope,
    search_sic_selection,
    sic_candidate,
)
from serialization import dumps, load_json, load_state, save_json
from tarry_sweep import TarrySweep
from wigner import direct_line_probabilities, line_probabilities, state_from_wigner, wigner_from_state

PASS = "pass"
FAIL = "fail"
INDETERMINATE = "indeterminate"

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


@dataclass
class RunReport:
    """Outcome of one subcommand"""

    command: List[str]
    status: str = PASS
    metrics: Dict[str, Any] = field(default_factory=dict)
    artifacts: List[str] = field(default_factory=list)
    listing: List[str] = field(default_factory=list, repr=False)

    @property
    def exit_code(self) -> int:
        return EXIT_FAILURE if self.status == FAIL else EXIT_OK

    def check(self, passed: bool):
        """Downgrade the status when an invariant fails"""
        if not passed:
            self.status = FAIL

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "status": self.status,
            "metrics": self.metrics,
            "artifacts": self.artifacts,
        }


def setup_logging(config: dict):
    """Setup logging configuration"""
    log_config = config.get("logging", {})
    log_level = log_config.get("level", "INFO")
    log_file = log_config.get("file", "./logs/mubgeo.log")

    # Create logs directory if it doesn't exist
    log_path = Path(log_file)
    log_path.parent.mkdir(parents=True, exist_ok=True)

    # stdout is reserved for --json output
    logging.basicConfig(
        level=getattr(logging, log_level),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            RotatingFileHandler(
                log_file,
                maxBytes=log_config.get("max_bytes", 10485760),
                backupCount=log_config.get("backup_count", 5),
            ),
            logging.StreamHandler(sys.stderr)
        ]
    )

    return logging.getLogger(__name__)


class Context:
    """Configuration and shared helpers for one CLI invocation"""

    def __init__(self, config: dict, args: argparse.Namespace):
        self.config = config
        self.args = args
        self.logger = logging.getLogger(__name__)

        limits = config.get("limits", {})
        tolerances = config.get("tolerances", {})
        self.field_order_cap = limits.get("field_order_cap", 65536)
        self.mub_order_cap = limits.get("mub_order_cap", 16)
        self.sic_order_cap = limits.get("sic_order_cap", 9)
        self.sic_tolerance = tolerances.get("sic", 1e-8)
        self.spectral_tolerance = tolerances.get("spectral", 1e-10)
        self.tolerance = args.tolerance if args.tolerance is not None else tolerances.get("verification", 1e-10)
        self.seed = args.seed if args.seed is not None else config.get("mub", {}).get("seed", 2718)
        self.max_retries = config.get("mub", {}).get("max_retries", 8)

        self.cache = None
        cache_config = config.get("cache", {})
        if cache_config.get("enabled"):
            self.cache = FieldTableCache(cache_config.get("cache_dir", "./data/cache"))

    @property
    def progress(self) -> bool:
        return not self.args.json

    def field_for(self, n: int) -> FieldTable:
        """GF(n), memoized in the field cache when it is enabled"""
        build = self.cache.get_or_create if self.cache is not None else None
        return field_for_order(n, max_order=self.field_order_cap, build=build)

    def mubs_for(self, n: int) -> MubSet:
        if n > self.mub_order_cap:
            raise OrderTooLarge(f"MUB construction capped at order {self.mub_order_cap}, got {n}")
        return mub_construct(self.field_for(n), seed=self.seed, max_order=self.mub_order_cap,
                             max_retries=self.max_retries, tolerance=self.tolerance)

    def write_json(self, report: RunReport, path, data: Any):
        report.artifacts.append(str(save_json(path, data)))


def cmd_mub(ctx: Context) -> RunReport:
    """Construct (or re-verify) a complete MUB set"""
    args = ctx.args
    report = RunReport(["mub"] + ([str(args.n)] if args.n is not None else ["--verify", args.verify]))

    if args.verify:
        mubs = MubSet.from_dict(load_json(args.verify))
    elif args.n is not None:
        mubs = ctx.mubs_for(args.n)
    else:
        raise MubGeoError("mub needs an order n or --verify FILE")

    check = mub_verify(mubs, ctx.tolerance)
    report.metrics.update({
        "n": mubs.n,
        "num_bases": mubs.num_bases,
        "complete": mubs.num_bases == mubs.n + 1,
        "orthonormality_error": check.orthonormality_error,
        "unbiasedness_deviation": check.unbiasedness_deviation,
    })
    if not check.passed:
        report.metrics["worst_pair"] = list(check.worst_pair) if check.worst_pair else None
    report.check(check.passed)

    if args.out and not args.verify:
        ctx.write_json(report, args.out, mubs.to_dict())
    return report


def _plane_listing(plane: AffinePlane) -> List[str]:
    lines = []
    for q, pencil in enumerate(plane.pencils):
        sets = " ".join("{" + ",".join(str(p) for p in plane.lines[line]) + "}" for line in pencil)
        lines.append(f"pencil {q}: {sets}")
    return lines


def cmd_plane(ctx: Context) -> RunReport:
    """Generate a field plane, build one from MOLS, or verify a plane file"""
    args = ctx.args
    if args.verify:
        report = RunReport(["plane", "--verify", args.verify])
        plane = AffinePlane.from_dict(load_json(args.verify))
    elif args.from_mols:
        report = RunReport(["plane", "--from-mols", args.from_mols])
        plane = plane_from_mols(MolsSet.from_text(Path(args.from_mols).read_text()))
    elif args.n is not None:
        report = RunReport(["plane", str(args.n)])
        plane = plane_from_field(ctx.field_for(args.n))
    else:
        raise MubGeoError("plane needs an order n, --from-mols FILE or --verify FILE")

    axioms = verify_axioms(plane)
    report.metrics.update({
        "n": plane.n,
        "points": plane.num_points,
        "lines": len(plane.lines),
        "pencils": len(plane.pencils),
    })
    for name, result in axioms.as_dict().items():
        report.metrics[name] = result.passed
        if not result.passed:
            report.metrics[f"{name}_witness"] = list(result.witness) if result.witness else None
            report.listing.append(f"{name} fails: {result.detail}")
    report.check(axioms.passed)

    if not args.verify:
        report.listing.extend(_plane_listing(plane))
        if args.out:
            ctx.write_json(report, args.out, plane.to_dict())
    return report


def cmd_mols(ctx: Context) -> RunReport:
    """Generate the field MOLS of order n, or verify a MOLS text file"""
    args = ctx.args
    if args.verify:
        report = RunReport(["mols", "--verify", args.verify])
        squares = squares_from_text(Path(args.verify).read_text())
        n = squares[0].n
        orders_match = all(square.n == n for square in squares)
        report.metrics.update({"n": n, "squares": len(squares), "orders_match": orders_match})
        report.check(orders_match)
        report.check(len(squares) <= n - 1)

        orthogonal = True
        if orders_match:
            for i in range(len(squares)):
                for j in range(i + 1, len(squares)):
                    result = are_orthogonal(squares[i], squares[j])
                    if not result.orthogonal and orthogonal:
                        orthogonal = False
                        report.metrics["witness"] = {"squares": [i, j], "cells": [list(c) for c in result.witness]}
        report.metrics["pairwise_orthogonal"] = orthogonal
        report.metrics["complete"] = orthogonal and len(squares) == n - 1
        report.check(orthogonal)
        return report

    if args.n is None:
        raise MubGeoError("mols needs an order n or --verify FILE")
    report = RunReport(["mols", str(args.n)])
    mols = mols_from_field(ctx.field_for(args.n))
    report.metrics.update({"n": mols.n, "squares": len(mols), "complete": len(mols) == mols.n - 1})
    report.listing.append(mols.to_text().rstrip())
    if args.out:
        path = Path(args.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(mols.to_text())
        report.artifacts.append(str(path))
    return report


def cmd_tarry(ctx: Context) -> RunReport:
    """Orthogonal-mate census over reduced Latin squares"""
    args = ctx.args
    sweep = TarrySweep(ctx.config)
    order = args.order if args.order is not None else sweep.default_order
    report = RunReport(["tarry", "--order", str(order)])

    summary = sweep.run(order, jobs=args.jobs, progress=ctx.progress)
    report.metrics.update({
        "order": summary["order"],
        "squares_examined": summary["squares_examined"],
        "mates_found": summary["mates_found"],
        "transversal_free_squares": summary["transversal_free_squares"],
        "exhaustive": summary["exhaustive"],
    })
    if not summary["exhaustive"]:
        report.status = INDETERMINATE
    if summary["first_mate"]:
        report.listing.append("first square with a mate:")
        report.listing.extend(" ".join(str(v) for v in row) for row in summary["first_mate"]["square"])

    if args.out:
        ctx.write_json(report, args.out, summary)
    return report


def _build_polytope(ctx: Context, n: int, abstract: bool) -> Polytope:
    if n > ctx.mub_order_cap:
        raise OrderTooLarge(f"Polytope construction capped at order {ctx.mub_order_cap}, got {n}")
    if abstract:
        return polytope_abstract(n)
    if prime_power(n) is None:
        raise OrderNotPrimePower(f"{n} is not a prime power; use --abstract for the Bloch-space realization")
    return polytope_from_mubs(ctx.mubs_for(n), tolerance=ctx.tolerance)


def cmd_polytope(ctx: Context) -> RunReport:
    """Verify the corner identities, report positivity and inscribe the D-simplex"""
    args = ctx.args
    command = ["polytope", str(args.n)] + (["--abstract"] if args.abstract else []) + (["--rotate"] if args.rotate else [])
    report = RunReport(command)

    poly = _build_polytope(ctx, args.n, args.abstract)
    if args.rotate:
        poly = rotate_polytope(poly, random_rotation(args.n * args.n - 1, seed=ctx.seed))

    check = poly.verify(ctx.tolerance)
    positivity = positivity_report(poly, ctx.spectral_tolerance)
    report.metrics.update({
        "n": poly.n,
        "realization": poly.realization,
        "corners": poly.num_corners,
        "trace_error": check.trace_error,
        "purity_error": check.purity_error,
        "within_simplex_error": check.within_simplex_error,
        "cross_simplex_error": check.cross_simplex_error,
        "radius_error": check.radius_error,
        "min_corner_eigenvalue": positivity.worst,
        "corners_are_states": positivity.is_density_set,
    })
    report.check(check.passed)
    if not positivity.is_density_set:
        report.listing.append(f"corner {tuple(positivity.worst_corner)} has eigenvalue {positivity.worst:.4f}")

    if prime_power(args.n) is not None:
        dsimplex = inscribe_dsimplex(poly, plane_from_field(ctx.field_for(args.n)), tolerance=ctx.tolerance)
        report.metrics["dsimplex_gram_error"] = dsimplex.gram_error
        report.check(dsimplex.gram_error <= ctx.tolerance)
        if args.export:
            ctx.write_json(report, args.export, dsimplex.to_dict())

    if args.out:
        ctx.write_json(report, args.out, {"verify": check.to_dict(), "positivity": positivity.to_dict()})
    return report


def cmd_wigner(ctx: Context) -> RunReport:
    """State -> Wigner table -> state, with marginal and line-probability checks"""
    args = ctx.args
    rho = load_state(args.state)
    n = args.n or rho.n
    report = RunReport(["wigner", "--state", args.state, "--n", str(n)] + (["--plane", args.plane] if args.plane else []))
    if rho.n != n:
        raise MubGeoError(f"State has dimension {rho.n}, --n is {n}")

    if args.plane:
        plane = AffinePlane.from_dict(load_json(args.plane))
    else:
        plane = plane_from_field(ctx.field_for(n))
    poly = _build_polytope(ctx, n, abstract=prime_power(n) is None)
    dsimplex = inscribe_dsimplex(poly, plane, tolerance=ctx.tolerance)

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", NotPositive)
        table = wigner_from_state(rho, dsimplex, tolerance=ctx.spectral_tolerance)
    state_is_positive = not any(issubclass(w.category, NotPositive) for w in caught)

    roundtrip = float(np.abs(state_from_wigner(table).matrix - rho.matrix).max())
    probabilities = line_probabilities(table)
    marginal_error = float(np.abs(probabilities.pencil_sums() - 1.0).max())
    metrics = {
        "n": n,
        "realization": poly.realization,
        "total": table.total(),
        "min_value": table.min_value(),
        "negativity": table.negativity(),
        "roundtrip_error": roundtrip,
        "marginal_error": marginal_error,
        "min_line_probability": probabilities.min_value(),
        "negative_line_probabilities": int((probabilities.values < -ctx.tolerance).sum()),
        "state_is_positive": state_is_positive,
        "bloch_norm": to_bloch(rho).norm,
    }
    report.check(roundtrip <= ctx.tolerance)
    report.check(marginal_error <= ctx.tolerance)
    if poly.realization == "quantum":
        direct = direct_line_probabilities(rho, dsimplex)
        metrics["line_probability_error"] = float(np.abs(direct.values - probabilities.values).max())
        report.check(metrics["line_probability_error"] <= ctx.tolerance)
        if state_is_positive:
            report.check(metrics["min_line_probability"] >= -ctx.tolerance)
    report.metrics.update(metrics)

    if metrics["negative_line_probabilities"]:
        report.listing.append(f"⚠️  {metrics['negative_line_probabilities']} line probabilities are negative")
    report.listing.extend(" ".join(f"{v:+.6f}" for v in row) for row in table.grid())

    if args.out:
        out = Path(args.out)
        ctx.write_json(report, out, table.to_dict())
        report.artifacts.append(str(probabilities.to_csv(out.with_suffix(".csv"))))
    return report


def cmd_sic(ctx: Context) -> RunReport:
    """Look for an orientation and line assignment whose rescaled D-simplex is a SIC"""
    args = ctx.args
    n = args.n
    report = RunReport(["sic", str(n)])
    if n > ctx.sic_order_cap:
        raise OrderTooLarge(f"SIC search capped at order {ctx.sic_order_cap}, got {n}")

    poly = polytope_from_mubs(ctx.mubs_for(n), tolerance=ctx.tolerance)
    plane = plane_from_field(ctx.field_for(n))

    # identity assignment on the facet side
    first = sic_candidate(inscribe_dsimplex(poly, plane, tolerance=ctx.tolerance), ctx.sic_tolerance)
    max_selections = args.max_selections or ctx.config.get("sic", {}).get("max_selections")
    result = search_sic_selection(poly, plane, max_selections=max_selections,
                                  tolerance=ctx.sic_tolerance, progress=ctx.progress)

    report.metrics.update({
        "n": n,
        "identity_is_sic": first.is_sic,
        "identity_min_eigenvalue": first.min_eigenvalue,
        "sic_found": result.found,
        "search_status": result.status,
        "selections_tried": result.selections_tried,
        "exhaustive": result.exhaustive,
        "best_min_eigenvalue": result.best_min_eigenvalue,
        "orientation": result.orientation or result.best_orientation,
    })
    if result.status == "indeterminate":
        report.status = INDETERMINATE
        ctx.logger.warning(f"SIC sweep for n={n} stopped after {result.selections_tried} selections")
    else:
        report.check(result.found)
    if result.assignment is not None:
        report.listing.append(f"orientation: {result.orientation}")
        report.listing.append(f"assignment: {result.assignment.to_dict()}")

    if args.out:
        ctx.write_json(report, args.out, {"identity": first.to_dict(), "search": result.to_dict()})
    return report


COMMANDS = {
    "mub": cmd_mub,
    "plane": cmd_plane,
    "mols": cmd_mols,
    "tarry": cmd_tarry,
    "polytope": cmd_polytope,
    "wigner": cmd_wigner,
    "sic": cmd_sic,
}


def print_report(report: RunReport):
    """
    Print a RunReport to the console

    Args:
        report: Finished report
    """
    print("\n" + "="*60)
    print(f"mubgeo {' '.join(report.command)}")
    print("="*60)

    for line in report.listing:
        print(f"  {line}")
    if report.listing:
        print()

    for name, value in report.metrics.items():
        if isinstance(value, float):
            value = f"{value:.3e}"
        print(f"📊 {name}: {value}")

    for artifact in report.artifacts:
        print(f"✓ Wrote {artifact}")

    if report.status == PASS:
        print("\n✓ All checks passed")
    elif report.status == INDETERMINATE:
        print("\n⚠️  Result is indeterminate (search bound reached)")
    else:
        print("\n❌ Invariant check failed")
    print("="*60 + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=str, help="Output file for the command's artifact")
    common.add_argument("--tolerance", type=float, default=None,
                        help="Verification tolerance (default: tolerances.verification, 1e-10)")
    common.add_argument("--seed", type=int, default=None, help="Seed for randomized constructions (default: mub.seed)")
    common.add_argument("--json", action="store_true", help="Print the RunReport as JSON to stdout")
    common.add_argument("--config", type=str, default=None,
                        help="Path to configuration YAML file (default: config/config.yaml)")
    common.add_argument("--timings", action="store_true", help="Include runtime in the report metrics")

    parser = argparse.ArgumentParser(
        description="Mutually unbiased bases, complementarity polytopes and finite affine planes",
        formatter_class=argparse.RawDescriptionHelpFormatter
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mub", parents=[common], help="Construct and verify n+1 MUBs")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--verify", type=str, help="Re-verify a MUB set JSON file")

    p = sub.add_parser("plane", parents=[common], help="Build or verify a finite affine plane")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--from-mols", type=str, help="Build the plane from a MOLS text file")
    p.add_argument("--verify", type=str, help="Check axioms A1-A3 of a plane JSON file")

    p = sub.add_parser("mols", parents=[common], help="Build or verify mutually orthogonal Latin squares")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--verify", type=str, help="Check a MOLS text file")

    p = sub.add_parser("tarry", parents=[common], help="Orthogonal-mate search over reduced Latin squares")
    p.add_argument("--order", type=int, default=None, help="Latin square order (default: tarry.default_order)")
    p.add_argument("--jobs", type=int, default=None, help="Worker processes (default: all cores)")

    p = sub.add_parser("polytope", parents=[common], help="Verify the complementarity polytope")
    p.add_argument("n", type=int)
    p.add_argument("--abstract", action="store_true", help="Place the corners directly in Bloch space")
    p.add_argument("--rotate", action="store_true", help="Apply a random rotation seeded by --seed")
    p.add_argument("--export", type=str, help="Write the inscribed D-simplex JSON to this file")

    p = sub.add_parser("wigner", parents=[common], help="Discrete Wigner function of a state")
    p.add_argument("--state", type=str, required=True, help="Density matrix JSON file")
    p.add_argument("--n", type=int, default=None, help="Dimension (default: taken from the state)")
    p.add_argument("--plane", type=str, help="Affine plane JSON file (default: the field plane)")

    p = sub.add_parser("sic", parents=[common], help="Search for a SIC-yielding D-simplex")
    p.add_argument("n", type=int)
    p.add_argument("--max-selections", type=int, default=None,
                   help="Bound on line assignments tried (default: sic.max_selections)")

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main application entry point"""

    # Load environment variables from .env file
    load_dotenv()

    parser = build_parser()
    args = parser.parse_args(argv)

    # Load configuration
    try:
        config_loader = ConfigLoader(args.config)
        config = config_loader.load()
    except Exception as e:
        print(f"\n❌ Configuration error: {e}", file=sys.stderr)
        print("See config/config.yaml and .env.example for reference.", file=sys.stderr)
        return EXIT_USAGE

    logger = setup_logging(config)
    logger.info(f"mubgeo {args.command} starting...")

    started = time.perf_counter()
    try:
        ctx = Context(config, args)
        report = COMMANDS[args.command](ctx)
    except MubGeoError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        logger.error(f"I/O error: {e}")
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.error(f"Unexpected error in {args.command}: {e}", exc_info=True)
        print(f"❌ Unexpected error: {e}", file=sys.stderr)
        return EXIT_FAILURE

    if args.timings:
        report.metrics["runtime_seconds"] = round(time.perf_counter() - started, 6)

    if args.json:
        print(dumps(report.to_dict()))
    else:
        print_report(report)

    logger.info(f"mubgeo {args.command} finished with status {report.status}")
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
