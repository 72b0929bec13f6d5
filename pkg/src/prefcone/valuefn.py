"""Constructed value functions: signed cone distances and linear weights.

Three kinds of handle evaluate to a consistent value function:

* ``psi`` — distance to the complement of the unperturbed cone minus
  distance to the cone, anchored at the reference alternative.  Concave,
  increasing, zero at the reference; defined whenever the cone is not the
  whole space, pointed or not.
* ``vartheta`` — the same signed distance on a shrunk-generator cone; when
  that cone is pointed the judgements land strictly inside it, so the
  separation becomes strict.
* ``linear`` — a plain weighted sum with strictly positive weights from the
  LP certificate.

Handles are immutable; evaluation is pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cones import (
    CLASSIFY_TOL,
    FacetCone,
    GeneratorCone,
    MembershipClass,
    classify,
    dist_to_cone,
    dist_to_complement,
    dual_hrep,
    extreme_rays,
    nnls,
    preference_cone,
)
from .consistency import extract_linear_weights, test_pointedness
from .errors import NotPointedError, WholeSpaceError
from .instance import PreferenceInstance, require_valid

__all__ = [
    "ValueFunctionHandle",
    "make_psi",
    "make_vartheta",
    "make_linear",
    "evaluate",
    "evaluate_batch",
]


@dataclass(frozen=True, eq=False)
class ValueFunctionHandle:
    kind: str  # "psi" | "vartheta" | "linear"
    reference: np.ndarray
    gen_cone: GeneratorCone | None = None
    facet_cone: FacetCone | None = None
    weights: np.ndarray | None = None

    @property
    def p(self) -> int:
        return self.reference.shape[0]

    @property
    def judgement_points(self) -> np.ndarray:
        """The preferred alternatives, recovered from the stored cone."""
        if self.gen_cone is None:
            raise ValueError("linear handles do not carry the judgement cone")
        return self.gen_cone.pref_generators + self.gen_cone.epsilon + self.reference


def make_psi(inst: PreferenceInstance) -> ValueFunctionHandle:
    """Signed-distance value function on the unperturbed cone.

    Needs no pointedness; only the cone's complement must be nonempty.
    """
    require_valid(inst)
    cone = preference_cone(inst, 0.0)
    facets = extreme_rays(dual_hrep(cone))
    if facets.is_whole_space:
        raise WholeSpaceError(
            "the preference cone is the whole space; the signed distance is undefined"
        )
    return ValueFunctionHandle(
        kind="psi", reference=inst.reference.copy(), gen_cone=cone, facet_cone=facets
    )


def make_vartheta(inst: PreferenceInstance, epsilon_bar: float) -> ValueFunctionHandle:
    """Strictly separating signed-distance function on the shrunk cone."""
    require_valid(inst)
    if not epsilon_bar > 0:
        raise ValueError("epsilon_bar must be strictly positive")
    if not test_pointedness(inst, epsilon_bar).pointed:
        raise NotPointedError(
            f"the cone shrunk by {epsilon_bar} is not pointed; choose a smaller epsilon"
        )
    cone = preference_cone(inst, epsilon_bar)
    facets = extreme_rays(dual_hrep(cone))
    return ValueFunctionHandle(
        kind="vartheta", reference=inst.reference.copy(), gen_cone=cone, facet_cone=facets
    )


def make_linear(inst: PreferenceInstance) -> ValueFunctionHandle:
    """Linear value function from the LP weight certificate (weights >= 1)."""
    weights = extract_linear_weights(inst)
    return ValueFunctionHandle(
        kind="linear", reference=inst.reference.copy(), weights=weights
    )


def evaluate(handle: ValueFunctionHandle, x: np.ndarray) -> float:
    """Value of the handle's function at x.

    For the signed-distance kinds the result is the distance to the cone's
    complement minus the distance to the cone; points classified on the
    boundary evaluate to exactly 0.0 rather than projection dust.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (handle.p,):
        raise ValueError(f"point has shape {x.shape}, expected ({handle.p},)")
    if handle.kind == "linear":
        return float(handle.weights @ x)
    y = x - handle.reference
    cls = classify(y, handle.facet_cone)
    if cls is MembershipClass.INTERIOR:
        return dist_to_complement(y, handle.facet_cone)
    if cls is MembershipClass.EXTERIOR:
        return -dist_to_cone(y, handle.gen_cone)
    return 0.0


def evaluate_batch(handle: ValueFunctionHandle, points: np.ndarray) -> np.ndarray:
    """Vectorized :func:`evaluate` over the rows of ``points``."""
    X = np.atleast_2d(np.asarray(points, dtype=float))
    if X.shape[1] != handle.p:
        raise ValueError(f"points have dimension {X.shape[1]}, expected {handle.p}")
    if handle.kind == "linear":
        return X @ handle.weights
    Y = X - handle.reference
    margins = (handle.facet_cone.facet_normals @ Y.T).min(axis=0)
    thresholds = CLASSIFY_TOL * (1.0 + np.linalg.norm(Y, axis=1))
    values = np.zeros(X.shape[0])
    interior = margins > thresholds
    values[interior] = margins[interior]
    G = handle.gen_cone.generator_matrix
    max_iter = 3 * (handle.gen_cone.t + handle.gen_cone.p) * handle.gen_cone.p
    for i in np.flatnonzero(margins < -thresholds):
        values[i] = -nnls(G, Y[i], max_iter=max_iter)[1]
    return values


def classification(handle: ValueFunctionHandle, x: np.ndarray) -> MembershipClass | None:
    """Membership of ``x`` relative to the handle's shifted cone (None for linear)."""
    if handle.kind == "linear":
        return None
    y = np.asarray(x, dtype=float) - handle.reference
    return classify(y, handle.facet_cone)
