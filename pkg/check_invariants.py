#!/usr/bin/env python3
"""
Check Invariants
Acceptance sweep: MUBs, polytope, D-simplex, plane, MOLS and Wigner
identities for every prime power order up to 9
"""

import sys
import time
from pathlib import Path

import numpy as np
import pandas as pd
from dotenv import load_dotenv
from tqdm import tqdm

sys.path.insert(0, str(Path(__file__).parent / "src"))

from affine import plane_from_field, plane_from_mols, plane_to_mols, verify_axioms
from config_loader import ConfigLoader
from gf import field_create, prime_power
from hspace import random_density_matrix
from latin import mols_from_field, relabel_symbols
from mub import mub_construct, mub_verify
from polytope import corner_values, inscribe_dsimplex, polytope_from_mubs
from wigner import direct_line_probabilities, line_probabilities, state_from_wigner, wigner_from_state

ORDERS = [2, 3, 4, 5, 7, 8, 9]
STATES_PER_ORDER = 100


def check_order(n: int, seed: int, tolerance: float) -> dict:
    """
    Run every identity check for one order

    Args:
        n: Prime power order
        seed: MUB and random-state seed
        tolerance: Accepted deviation

    Returns:
        Dictionary of worst deviations and pass flags
    """
    started = time.perf_counter()
    field = field_create(*prime_power(n))

    mubs = mub_construct(field, seed=seed, tolerance=tolerance)
    mub_report = mub_verify(mubs, tolerance)

    poly = polytope_from_mubs(mubs, tolerance)
    poly_report = poly.verify(tolerance)

    plane = plane_from_field(field)
    axioms = verify_axioms(plane)

    mols = mols_from_field(field)
    recovered = plane_to_mols(plane_from_mols(mols))
    mols_ok = all(relabel_symbols(a) == relabel_symbols(b) for a, b in zip(mols, recovered))

    dsimplex = inscribe_dsimplex(poly, plane, tolerance=tolerance)
    face_error = 0.0
    for op in dsimplex.operators:
        values = corner_values(poly, op)
        face_error = max(face_error, abs(op.op.trace() - 1), abs(op.op.purity() - n),
                         float(np.abs(values * (1 - values)).max()))

    rng = np.random.default_rng(seed)
    roundtrip = marginal = cross = 0.0
    for _ in range(STATES_PER_ORDER):
        rho = random_density_matrix(n, seed=rng)
        table = wigner_from_state(rho, dsimplex)
        roundtrip = max(roundtrip, float(np.abs(state_from_wigner(table).matrix - rho.matrix).max()))
        probs = line_probabilities(table)
        marginal = max(marginal, float(np.abs(probs.pencil_sums() - 1).max()))
        cross = max(cross, float(np.abs(direct_line_probabilities(rho, dsimplex).values - probs.values).max()))

    row = {
        "n": n,
        "mub_deviation": mub_report.unbiasedness_deviation,
        "polytope_ok": poly_report.passed,
        "axioms_ok": axioms.passed,
        "mols_ok": mols_ok,
        "face_error": face_error,
        "gram_error": dsimplex.gram_error,
        "wigner_roundtrip": roundtrip,
        "marginal_error": marginal,
        "line_prob_error": cross,
        "seconds": round(time.perf_counter() - started, 2),
    }
    row["passed"] = bool(
        mub_report.passed and poly_report.passed and axioms.passed and mols_ok
        and max(face_error, dsimplex.gram_error, roundtrip, marginal, cross) <= tolerance
    )
    return row


def main():
    """Run the acceptance sweep"""

    load_dotenv()

    config_loader = ConfigLoader()
    config = config_loader.load()
    seed = config_loader.get("mub.seed", 2718)
    tolerance = config_loader.get("tolerances.verification", 1e-10)

    print("\n" + "="*60)
    print("INVARIANT CHECK")
    print("="*60)

    rows = [check_order(n, seed, tolerance) for n in tqdm(ORDERS, desc="Orders")]
    frame = pd.DataFrame(rows).set_index("n")

    print("\n" + frame.to_string(float_format=lambda v: f"{v:.1e}"))

    print("\n" + "="*60)
    if frame["passed"].all():
        print("✓ All invariants hold")
    else:
        failed = ", ".join(str(n) for n in frame.index[~frame["passed"]])
        print(f"❌ Invariants failed for n = {failed}")
    print("="*60)

    return 0 if frame["passed"].all() else 1


if __name__ == "__main__":
    sys.exit(main())
