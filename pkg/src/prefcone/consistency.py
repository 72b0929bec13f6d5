"""The operational consistency test and its verdict report.

Whether the judgements admit an increasing quasi-concave value function,
an increasing linear one, a pointed preference cone, and a zero-optimum
feasibility program are one and the same question; the test answers it by
solving a single small LP and, on success, backtracks a perturbation size
under which the strict version of the construction goes through.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .cones import dual_hrep, extreme_rays, preference_cone
from .errors import MaxIterExceededError, NotPointedError
from .instance import PreferenceInstance, generators, require_valid
from .lp import build_pointedness_lp, solve

__all__ = [
    "Z_STAR_TOL",
    "EpsilonSearchConfig",
    "PointednessResult",
    "ConsistencyReport",
    "test_pointedness",
    "epsilon_search",
    "extract_linear_weights",
    "consistency_verdict",
]

# The LP optimum is a sum of residuals of a unit-rhs system; anything at or
# below this is a numerically exact zero.
Z_STAR_TOL = 1e-7


@dataclass(frozen=True)
class EpsilonSearchConfig:
    """Backtracking schedule: try epsilon0 * beta^i for i = 0, 1, 2, ..."""

    epsilon0: float = 1e-2
    beta: float = 0.5
    max_iter: int = 60

    def __post_init__(self):
        if not self.epsilon0 > 0:
            raise ValueError("epsilon0 must be positive")
        if not 0 < self.beta < 1:
            raise ValueError("beta must lie strictly between 0 and 1")
        if self.max_iter < 1:
            raise ValueError("max_iter must be a positive integer")


class PointednessResult(NamedTuple):
    pointed: bool
    z_star: float
    certificate: np.ndarray | None


@dataclass(frozen=True, eq=False)
class ConsistencyReport:
    """Verdict bundle; the four equivalent statements share one truth value.

    ``weight_certificate`` and ``epsilon_bar`` are present exactly when the
    verdict is consistent.
    """

    pointed: bool
    z_star: float
    weight_certificate: np.ndarray | None
    epsilon_bar: float | None
    facet_count: int
    verdict_text: str

    @property
    def statements(self) -> dict[str, bool]:
        return {
            "linear_function_exists": self.pointed,
            "quasiconcave_function_exists": self.pointed,
            "cone_pointed": self.pointed,
            "lp_optimum_zero": self.pointed,
        }

    def to_dict(self) -> dict:
        weights = None
        if self.weight_certificate is not None:
            weights = self.weight_certificate.tolist()
        return {
            "pointed": self.pointed,
            "z_star": self.z_star,
            "weight_certificate": weights,
            "epsilon_bar": self.epsilon_bar,
            "facet_count": self.facet_count,
            "verdict_text": self.verdict_text,
            "equivalent_statements": self.statements,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def test_pointedness(
    inst: PreferenceInstance, epsilon: float = 0.0
) -> PointednessResult:
    """Decide pointedness of the (possibly perturbed) preference cone by LP.

    Pointed iff the feasibility program's optimum is zero; in that case the
    d part of the optimal solution is returned as certificate.  It satisfies
    d >= 1 componentwise and ``gen_j . d >= 1`` for every generator.
    """
    require_valid(inst)
    gens = generators(inst, epsilon)
    sol = solve(build_pointedness_lp(gens, inst.p))
    z_star = float(sol.objective_value)
    pointed = z_star <= Z_STAR_TOL
    certificate = sol.values[: inst.p].copy() if pointed else None
    return PointednessResult(pointed, z_star, certificate)


test_pointedness.__test__ = False  # not a pytest case despite the name


def epsilon_search(
    inst: PreferenceInstance, cfg: EpsilonSearchConfig | None = None
) -> float:
    """Backtrack to a perturbation size whose shrunk cone is still pointed.

    Requires the unperturbed cone to be pointed (otherwise no perturbation
    works and the loop would never stop).  Returns the first epsilon on the
    schedule that tests pointed; every smaller epsilon then works too.
    """
    cfg = cfg or EpsilonSearchConfig()
    if not test_pointedness(inst, 0.0).pointed:
        raise NotPointedError(
            "the preference cone is not pointed; no perturbation can be"
        )
    for i in range(cfg.max_iter):
        eps = cfg.beta**i * cfg.epsilon0
        if test_pointedness(inst, eps).pointed:
            return eps
    raise MaxIterExceededError(
        f"no pointed perturbation found in {cfg.max_iter} trials from {cfg.epsilon0}"
    )


def extract_linear_weights(inst: PreferenceInstance) -> np.ndarray:
    """Strictly positive weights d with d.x_j > d.x_k for every judgement.

    Taken straight from the LP certificate, which already guarantees
    d >= 1 componentwise and (x_j - x_k).d >= 1.
    """
    result = test_pointedness(inst, 0.0)
    if not result.pointed:
        raise NotPointedError(
            "no increasing linear value function reproduces these judgements"
        )
    return result.certificate


def consistency_verdict(
    inst: PreferenceInstance, cfg: EpsilonSearchConfig | None = None
) -> ConsistencyReport:
    """Run the full test and assemble the report."""
    require_valid(inst)
    result = test_pointedness(inst, 0.0)
    facets = extreme_rays(dual_hrep(preference_cone(inst, 0.0)))
    epsilon_bar = None
    weights = None
    if result.pointed:
        epsilon_bar = epsilon_search(inst, cfg)
        weights = result.certificate
    return ConsistencyReport(
        pointed=result.pointed,
        z_star=result.z_star,
        weight_certificate=weights,
        epsilon_bar=epsilon_bar,
        facet_count=facets.n_facets,
        verdict_text=_verdict_text(result.pointed, result.z_star),
    )


def _verdict_text(pointed: bool, z_star: float) -> str:
    yn = "yes" if pointed else "no"
    lines = [
        "consistent with an increasing quasi-concave value function"
        if pointed
        else "inconsistent: no increasing quasi-concave (equivalently, no "
        "increasing linear) value function reproduces the judgements",
        f"(1) an increasing linear value function strictly separates: {yn}",
        f"(2) an increasing quasi-concave value function strictly separates: {yn}",
        f"(3) the preference cone is pointed: {yn}",
        f"(4) the feasibility program attains optimum zero (z* = {z_star:.3g}): {yn}",
    ]
    return "\n".join(lines)
