"""Brute-force verifiers used by the test suite.

Nothing here is imported by the engine: the distance oracle, the LP basis
enumerator, and the sampled property checker exist to pin expected values
independently of the code paths they audit.  Everything is deterministic
under a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Any

import numpy as np

from .cones import GeneratorCone
from .errors import TooLargeError
from .lp import StandardLP
from .valuefn import ValueFunctionHandle, evaluate_batch

__all__ = [
    "PropertyViolation",
    "brute_dist_to_cone",
    "enumerate_lp_optimum",
    "check_properties",
]


@dataclass(frozen=True)
class PropertyViolation:
    """One sampled invariant failure; only recorded when the gap beats the tolerance."""

    prop: str
    witness: dict[str, Any]
    lhs: float
    rhs: float
    gap: float


def brute_dist_to_cone(
    y: np.ndarray,
    cone: GeneratorCone,
    samples: int = 1000,
    refine_rounds: int = 120,
) -> float:
    """Upper bound on the distance from y to the cone, no projections involved.

    Random nonnegative coefficient vectors seed a cyclic coordinate descent
    on ||G.coef - y|| over coef >= 0; each coordinate update is the exact
    one-dimensional minimizer, so the refinement converges to the true
    distance from any start.  Use as a >=-oracle against the engine.
    """
    if samples < 1000:
        raise ValueError("need at least 1000 samples for a trustworthy bound")
    y = np.asarray(y, dtype=float)
    G = cone.generator_matrix  # (p, n)
    n = G.shape[1]
    col_sq = np.einsum("ij,ij->j", G, G)
    rng = np.random.default_rng(int(np.abs(y).sum() * 1e6) % (2**32))

    scales = np.linalg.norm(y) / np.sqrt(col_sq.max()) + 1.0
    cloud = rng.uniform(0.0, scales, size=(samples, n))
    cloud[0] = 0.0
    residuals = np.linalg.norm(cloud @ G.T - y, axis=1)
    starts = cloud[np.argsort(residuals)[:4]]

    best = np.inf
    for coef in starts:
        coef = coef.copy()
        resid = y - G @ coef
        for _ in range(refine_rounds):
            for j in range(n):
                if col_sq[j] == 0.0:
                    continue
                step = (G[:, j] @ resid) / col_sq[j]
                new = max(0.0, coef[j] + step)
                delta = new - coef[j]
                if delta != 0.0:
                    resid -= delta * G[:, j]
                    coef[j] = new
        best = min(best, float(np.linalg.norm(resid)))
    return best


def enumerate_lp_optimum(lp: StandardLP, max_rows: int = 6, max_vars: int = 14) -> float:
    """Exact optimum by scanning every basic feasible solution of a small LP."""
    A, b, c = lp.constraint_matrix, lp.rhs, lp.objective
    n_rows, n_vars = A.shape
    if n_rows > max_rows or n_vars > max_vars:
        raise TooLargeError(
            f"enumeration capped at {max_rows} rows / {max_vars} variables, "
            f"got {n_rows}x{n_vars}"
        )
    best = np.inf
    for cols in combinations(range(n_vars), n_rows):
        B = A[:, cols]
        try:
            x_b = np.linalg.solve(B, b)
        except np.linalg.LinAlgError:
            continue
        if np.linalg.norm(B @ x_b - b) > 1e-8 * (1.0 + np.linalg.norm(b)):
            continue
        if x_b.min() < -1e-9:
            continue
        best = min(best, float(c[list(cols)] @ x_b))
    if not np.isfinite(best):
        raise ValueError("no basic feasible solution found")
    return best


def check_properties(
    handle: ValueFunctionHandle,
    n_samples: int = 1000,
    seed: int = 0,
    judgement_points: np.ndarray | None = None,
) -> list[PropertyViolation]:
    """Sampled audit of every invariant the value functions promise.

    Draws ``n_samples`` base points in [-10, 10]^p and derives pairs,
    midpoints, and bumped points from them.  Which checks run depends on
    the handle kind: concavity and monotonicity always; Lipschitz-2, the
    sign pattern, and cone monotonicity for the signed-distance kinds; weak
    or strict separation at the judgement points for psi/vartheta; strict
    linear separation when ``judgement_points`` is supplied for a linear
    handle.
    """
    rng = np.random.default_rng(seed)
    p = handle.p
    out: list[PropertyViolation] = []

    X = rng.uniform(-10.0, 10.0, size=(n_samples, p))
    vals = evaluate_batch(handle, X)

    half = n_samples // 2
    A, B = X[:half], X[half : 2 * half]
    fa, fb = vals[:half], vals[half : 2 * half]
    lam = rng.uniform(0.0, 1.0, size=half)
    mid = lam[:, None] * A + (1.0 - lam)[:, None] * B
    fmid = evaluate_batch(handle, mid)

    tol = 1e-9 if handle.kind == "linear" else 1e-7
    mix = lam * fa + (1.0 - lam) * fb
    for i in np.flatnonzero(fmid < mix - tol):
        out.append(
            PropertyViolation(
                "concavity",
                {"x": A[i].tolist(), "y": B[i].tolist(), "lam": float(lam[i])},
                float(fmid[i]),
                float(mix[i]),
                float(mix[i] - fmid[i]),
            )
        )

    bump = rng.uniform(0.0, 5.0, size=(half, p))
    fbump = evaluate_batch(handle, A + bump)
    for i in np.flatnonzero(fa > fbump + 1e-9):
        out.append(
            PropertyViolation(
                "monotonicity",
                {"x": A[i].tolist(), "bump": bump[i].tolist()},
                float(fa[i]),
                float(fbump[i]),
                float(fa[i] - fbump[i]),
            )
        )

    if handle.kind in ("psi", "vartheta"):
        out += _signed_distance_checks(handle, rng, X, vals, A, B, fa, fb)
        out += _separation_checks(handle)
    elif judgement_points is not None:
        ref_val = float(handle.weights @ handle.reference)
        for xj in np.atleast_2d(judgement_points):
            val = float(handle.weights @ xj)
            if not val > ref_val + 1e-9:
                out.append(
                    PropertyViolation(
                        "linear_separation",
                        {"x_j": list(map(float, xj))},
                        val,
                        ref_val,
                        ref_val - val,
                    )
                )
    return out


def _signed_distance_checks(handle, rng, X, vals, A, B, fa, fb):
    out = []
    lips = np.abs(fa - fb) - 2.0 * np.linalg.norm(A - B, axis=1)
    for i in np.flatnonzero(lips > 1e-9):
        out.append(
            PropertyViolation(
                "lipschitz_2",
                {"x": A[i].tolist(), "y": B[i].tolist()},
                float(np.abs(fa - fb)[i]),
                float(2.0 * np.linalg.norm(A[i] - B[i])),
                float(lips[i]),
            )
        )

    Y = X - handle.reference
    margins = (handle.facet_cone.facet_normals @ Y.T).min(axis=0)
    thresholds = 1e-9 * (1.0 + np.linalg.norm(Y, axis=1))
    interior = margins > thresholds
    exterior = margins < -thresholds
    boundary = ~interior & ~exterior
    bad_sign = (
        (interior & (vals <= 0.0))
        | (exterior & (vals >= 0.0))
        | (boundary & (np.abs(vals) > 1e-8))
    )
    for i in np.flatnonzero(bad_sign):
        out.append(
            PropertyViolation(
                "sign_pattern",
                {"x": X[i].tolist(), "margin": float(margins[i])},
                float(vals[i]),
                0.0,
                float(abs(vals[i])),
            )
        )

    # shifts along the cone keep the value from dropping
    half = A.shape[0]
    cone = handle.gen_cone
    lam = rng.uniform(0.0, 1.0, size=(half, cone.t + cone.p))
    Z = lam @ cone.generator_matrix.T
    fshift = evaluate_batch(handle, A + Z)
    for i in np.flatnonzero(fa > fshift + 1e-9):
        out.append(
            PropertyViolation(
                "cone_monotonicity",
                {"x": A[i].tolist(), "shift": Z[i].tolist()},
                float(fa[i]),
                float(fshift[i]),
                float(fa[i] - fshift[i]),
            )
        )
    return out


def _separation_checks(handle):
    out = []
    ref_val = float(evaluate_batch(handle, handle.reference[None, :])[0])
    if abs(ref_val) > 1e-8:
        out.append(
            PropertyViolation(
                "reference_value_zero",
                {"x_k": handle.reference.tolist()},
                ref_val,
                0.0,
                abs(ref_val),
            )
        )
    jvals = evaluate_batch(handle, handle.judgement_points)
    if handle.kind == "psi":
        for xj, val in zip(handle.judgement_points, jvals):
            if val < ref_val - 1e-9:
                out.append(
                    PropertyViolation(
                        "weak_separation",
                        {"x_j": xj.tolist()},
                        float(val),
                        ref_val,
                        float(ref_val - val),
                    )
                )
    else:
        for xj, val in zip(handle.judgement_points, jvals):
            if not val > ref_val + 1e-9:
                out.append(
                    PropertyViolation(
                        "strict_separation",
                        {"x_j": xj.tolist()},
                        float(val),
                        ref_val,
                        float(ref_val - val),
                    )
                )
    return out
