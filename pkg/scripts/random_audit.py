#!/usr/bin/env python3
"""Randomized equivalence audit.

Draws random integer-coordinate instances and checks, for each, that the
four routes to the consistency answer agree: strict linear separation from
the LP certificate, the strict signed-distance construction on a shrunk
cone, dual-cone full-dimensionality, and a zero LP optimum.  Also runs the
sampled value-function property checks on every instance whose cone has a
nonempty complement.
"""

from __future__ import annotations

import argparse
import sys
import time
from collections import Counter
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from _helpers import random_instance  # noqa: E402

from prefcone import (  # noqa: E402
    NotPointedError,
    WholeSpaceError,
    dual_hrep,
    epsilon_search,
    evaluate,
    extract_linear_weights,
    is_pointed_geometric,
    make_psi,
    make_vartheta,
    preference_cone,
    test_pointedness,
)
from prefcone.oracle import check_properties  # noqa: E402


def audit_one(inst, seed: int, n_samples: int) -> tuple[tuple[bool, ...], int]:
    by_lp = test_pointedness(inst, 0.0).pointed
    by_geometry = is_pointed_geometric(dual_hrep(preference_cone(inst, 0.0)))
    try:
        weights = extract_linear_weights(inst)
        ref = float(weights @ inst.reference)
        by_linear = all(
            float(weights @ inst.alternatives[j]) > ref for j in inst.preferred_indices
        )
    except NotPointedError:
        by_linear = False
    try:
        handle = make_vartheta(inst, epsilon_search(inst))
        ref = evaluate(handle, inst.reference)
        by_strict = all(
            evaluate(handle, inst.alternatives[j]) > ref for j in inst.preferred_indices
        )
    except NotPointedError:
        by_strict = False

    violations = 0
    try:
        psi = make_psi(inst)
    except WholeSpaceError:
        psi = None
    if psi is not None:
        violations = len(check_properties(psi, n_samples, seed=seed))
    return (by_linear, by_strict, by_geometry, by_lp), violations


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("-n", "--instances", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=1000)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    rows = Counter()
    total_violations = 0
    mixed = 0
    start = time.perf_counter()
    for i in range(args.instances):
        inst = random_instance(rng)
        row, violations = audit_one(inst, seed=args.seed + i, n_samples=args.samples)
        rows[row] += 1
        total_violations += violations
        if len(set(row)) != 1:
            mixed += 1
            print(f"MIXED ROW at instance {i}: {row}")
    elapsed = time.perf_counter() - start

    print(f"instances: {args.instances}   elapsed: {elapsed:.1f}s")
    print("(linear, strict-signed-distance, geometric, lp) -> count")
    for row, count in sorted(rows.items()):
        print(f"  {row}: {count}")
    print(f"mixed rows: {mixed}")
    print(f"sampled property violations: {total_violations}")
    if mixed or total_violations:
        sys.exit(1)


if __name__ == "__main__":
    main()
