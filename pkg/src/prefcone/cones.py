"""Geometry of the preference cone: representations, membership, distances.

The cone of interest is generated by the judgement directions plus the
nonnegative orthant, so it is always full-dimensional.  Its facet normals
are obtained as the extreme rays of the dual cone (which has a clean
half-space description) via the double description method; distances to the
cone come from a Lawson-Hanson nonnegative least squares projection, and
distances to the complement reduce to a minimum over unit facet normals.

All distances are Euclidean.  Cone objects are immutable and every
operation here is a pure function, safe for concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    DimensionTooLargeError,
    NnlsMaxIterError,
    WholeSpaceError,
)
from .instance import PreferenceInstance, generators

__all__ = [
    "CLASSIFY_TOL",
    "RAY_DEDUP_TOL",
    "MAX_DD_DIM",
    "GeneratorCone",
    "FacetCone",
    "MembershipClass",
    "preference_cone",
    "dual_hrep",
    "extreme_rays",
    "classify",
    "dist_to_cone",
    "dist_to_complement",
    "is_pointed_geometric",
    "nnls",
]

CLASSIFY_TOL = 1e-9
RAY_DEDUP_TOL = 1e-9
MAX_DD_DIM = 12

_ACTIVITY_TOL = 1e-9


class MembershipClass(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True, eq=False)
class GeneratorCone:
    """V-representation: judgement generators plus the p unit axis generators."""

    pref_generators: np.ndarray  # (t, p)
    axis_generators: np.ndarray  # (p, p), always the standard basis
    epsilon: float

    def __post_init__(self):
        axes = np.asarray(self.axis_generators, dtype=float)
        if axes.ndim != 2 or axes.shape[0] != axes.shape[1]:
            raise ValueError("axis_generators must be a square matrix")
        p = axes.shape[0]
        if not np.array_equal(axes, np.eye(p)):
            raise ValueError("axis_generators must be exactly the standard basis")
        pref = np.asarray(self.pref_generators, dtype=float).reshape(-1, p)
        object.__setattr__(self, "pref_generators", pref)
        object.__setattr__(self, "axis_generators", axes)
        object.__setattr__(self, "epsilon", float(self.epsilon))

    @property
    def p(self) -> int:
        return self.axis_generators.shape[0]

    @property
    def t(self) -> int:
        return self.pref_generators.shape[0]

    @property
    def generator_matrix(self) -> np.ndarray:
        """(p, t+p) matrix whose columns generate the cone."""
        return np.vstack([self.pref_generators, self.axis_generators]).T


@dataclass(frozen=True, eq=False)
class FacetCone:
    """H-representation: cone = {y : a.y >= 0 for every unit facet normal a}.

    The normals are the extreme rays of the dual cone.  Because the primal
    contains the nonnegative orthant, every normal is componentwise
    nonnegative.  ``is_whole_space`` is set when the dual is {0}, i.e. the
    primal is all of R^p and has no facets.
    """

    facet_normals: np.ndarray  # (k, p), unit rows
    is_whole_space: bool

    def __post_init__(self):
        normals = np.asarray(self.facet_normals, dtype=float)
        if normals.size == 0:
            normals = normals.reshape(0, normals.shape[1] if normals.ndim == 2 else 0)
        if normals.ndim != 2:
            raise ValueError("facet_normals must be a 2-d array")
        if normals.shape[0] and not np.allclose(
            np.linalg.norm(normals, axis=1), 1.0, atol=1e-9
        ):
            raise ValueError("facet normals must have unit Euclidean norm")
        object.__setattr__(self, "facet_normals", normals)
        object.__setattr__(self, "is_whole_space", bool(self.is_whole_space))

    @property
    def n_facets(self) -> int:
        return self.facet_normals.shape[0]

    def to_dict(self) -> dict:
        return {"normals": self.facet_normals.tolist()}


def preference_cone(inst: PreferenceInstance, epsilon: float = 0.0) -> GeneratorCone:
    """Cone generated by the instance's judgement directions and the orthant."""
    return GeneratorCone(
        pref_generators=generators(inst, epsilon),
        axis_generators=np.eye(inst.p),
        epsilon=epsilon,
    )


def dual_hrep(cone: GeneratorCone) -> np.ndarray:
    """Half-space rows describing the dual cone {d : d >= 0, gen.d >= 0}.

    The p axis rows come first, then the judgement generator rows in input
    order.
    """
    return np.vstack([cone.axis_generators, cone.pref_generators])


def extreme_rays(hrep: np.ndarray, max_dim: int = MAX_DD_DIM) -> FacetCone:
    """Extreme rays of {d : row.d >= 0 for all rows}, as a FacetCone.

    By bipolarity these rays are the facet normals of the primal cone the
    hrep was dualized from (the primal is full-dimensional in every use
    here).  Rays are unit-normalized, deduplicated, and sorted for
    deterministic output.  If the hrep cone is {0} the primal is the whole
    space and the result carries ``is_whole_space=True``.

    When the hrep cone contains lines, the returned rays are extreme rays
    of its quotient modulo the lineality space, represented orthogonal to
    it.  That case never arises from :func:`dual_hrep`, whose axis rows pin
    the cone inside the nonnegative orthant.
    """
    rows = np.atleast_2d(np.asarray(hrep, dtype=float))
    if rows.shape[0] == 0:
        raise ValueError("hrep must contain at least one row")
    p = rows.shape[1]
    if p > max_dim:
        raise DimensionTooLargeError(
            f"double description capped at dimension {max_dim}, got {p}"
        )
    norms = np.linalg.norm(rows, axis=1)
    rows = rows[norms > 1e-12] / norms[norms > 1e-12, None]
    if rows.shape[0] == 0:
        raise ValueError("hrep rows are all zero")

    # Quotient out the lineality space {d : rows.d = 0}; skip the change of
    # basis entirely in the common full-rank (trivial lineality) case.
    _, sv, vt = np.linalg.svd(rows)
    rank = int(np.sum(sv > 1e-10 * max(rows.shape) * sv[0]))
    quotient = None if rank == p else vt[:rank].T  # (p, q) orthonormal
    reduced = rows if quotient is None else rows @ quotient
    rays_q = _dd_pointed(reduced)
    if rays_q.shape[0] == 0:
        if rank < p:
            raise ValueError(
                "hrep cone is a nontrivial subspace; it has no extreme rays"
            )
        return FacetCone(facet_normals=np.zeros((0, p)), is_whole_space=True)
    rays = rays_q.copy() if quotient is None else rays_q @ quotient.T
    rays[np.abs(rays) < 1e-12] = 0.0
    rays /= np.linalg.norm(rays, axis=1)[:, None]
    order = np.lexsort(np.round(rays, 12).T[::-1])
    return FacetCone(facet_normals=rays[order], is_whole_space=False)


def _dd_pointed(A: np.ndarray) -> np.ndarray:
    """Double description on {x : A.x >= 0} with trivial lineality.

    Starts from a simplicial subcone built out of q independent rows and
    inserts the remaining half-spaces one at a time, combining adjacent
    ray pairs across each cut.  Adjacency uses the combinatorial test (no
    third ray's active set contains the common active set), which is exact
    for pointed cones.
    """
    m, q = A.shape
    base: list[int] = []
    for i in range(m):
        if np.linalg.matrix_rank(A[base + [i]]) > len(base):
            base.append(i)
            if len(base) == q:
                break
    # rank(A) == q because the lineality space was quotiented out
    rays = np.linalg.inv(A[base]).T  # row i solves A[base] @ ray = e_i
    rays /= np.linalg.norm(rays, axis=1)[:, None]
    processed = list(base)

    for i in (j for j in range(m) if j not in base):
        vals = rays @ A[i]
        pos = vals > _ACTIVITY_TOL
        neg = vals < -_ACTIVITY_TOL
        if not neg.any():
            processed.append(i)
            continue
        keep = rays[~neg]
        new: list[np.ndarray] = []
        if pos.any():
            active = np.abs(rays @ A[processed].T) <= _ACTIVITY_TOL  # (n_rays, n_proc)
            for u in np.flatnonzero(pos):
                for w in np.flatnonzero(neg):
                    common = active[u] & active[w]
                    others = [
                        v
                        for v in range(rays.shape[0])
                        if v != u and v != w and active[v][common].all()
                    ]
                    if others:
                        continue
                    ray = vals[u] * rays[w] - vals[w] * rays[u]
                    ray /= np.linalg.norm(ray)
                    new.append(ray)
        rays = _dedupe(np.vstack([keep] + new) if new else keep)
        processed.append(i)
        if rays.shape[0] == 0:
            break
    return rays


def _dedupe(rays: np.ndarray) -> np.ndarray:
    kept: list[np.ndarray] = []
    for ray in rays:
        if not any(np.linalg.norm(ray - other) <= RAY_DEDUP_TOL for other in kept):
            kept.append(ray)
    return np.array(kept).reshape(-1, rays.shape[1])


def classify(y: np.ndarray, facets: FacetCone) -> MembershipClass:
    """Interior/boundary/exterior of the facet-described cone, with a scaled tolerance."""
    if facets.is_whole_space:
        raise WholeSpaceError(
            "the cone is the whole space; its complement is empty and membership is trivial"
        )
    y = np.asarray(y, dtype=float)
    margin = float((facets.facet_normals @ y).min())
    threshold = CLASSIFY_TOL * (1.0 + float(np.linalg.norm(y)))
    if margin > threshold:
        return MembershipClass.INTERIOR
    if margin < -threshold:
        return MembershipClass.EXTERIOR
    return MembershipClass.BOUNDARY


def facet_margin(y: np.ndarray, facets: FacetCone) -> float:
    """min over unit facet normals of a.y (positive inside, negative outside)."""
    if facets.is_whole_space:
        raise WholeSpaceError("the cone is the whole space; it has no facets")
    return float((facets.facet_normals @ np.asarray(y, dtype=float)).min())


def dist_to_cone(y: np.ndarray, cone: GeneratorCone) -> float:
    """Euclidean distance from y to the finitely generated cone.

    Computed as the residual of min ||G.coef - y|| over coef >= 0, where the
    columns of G are the judgement and axis generators.  Zero (within 1e-8)
    exactly when y is inside the closed cone.
    """
    y = np.asarray(y, dtype=float)
    max_iter = 3 * (cone.t + cone.p) * cone.p
    _, resid = nnls(cone.generator_matrix, y, max_iter=max_iter)
    return resid


def dist_to_complement(y: np.ndarray, facets: FacetCone) -> float:
    """Euclidean distance from y to the complement of the cone.

    Zero unless y is interior; for interior points the distance to the
    complement of a convex cone equals the smallest distance to a facet
    hyperplane, i.e. the minimum of a.y over unit facet normals.
    """
    y = np.asarray(y, dtype=float)
    if classify(y, facets) is not MembershipClass.INTERIOR:
        return 0.0
    return facet_margin(y, facets)


def is_pointed_geometric(hrep: np.ndarray) -> bool:
    """Pointedness of the primal cone, decided purely from dual geometry.

    The primal is pointed iff its dual is full-dimensional: the dual's
    extreme rays must span R^p and their sum must satisfy every dual
    constraint strictly.  Serves as an oracle independent of the LP test.
    """
    facets = extreme_rays(hrep)
    if facets.is_whole_space:
        return False
    p = np.atleast_2d(np.asarray(hrep, dtype=float)).shape[1]
    rays = facets.facet_normals
    if np.linalg.matrix_rank(rays, tol=1e-9) < p:
        return False
    witness = rays.sum(axis=0)
    return bool((np.asarray(hrep, dtype=float) @ witness).min() > _ACTIVITY_TOL)


def nnls(columns: np.ndarray, target: np.ndarray, max_iter: int | None = None):
    """Lawson-Hanson active-set solve of min ||columns @ coef - target||, coef >= 0.

    Returns ``(coef, residual_norm)``.  Columns are rescaled to unit norm
    internally (zero columns are dropped), which leaves the residual
    unchanged.  Raises NnlsMaxIterError when the active-set loop exceeds
    ``max_iter`` (a sign of numerical pathology, not a routine outcome).
    """
    G = np.atleast_2d(np.asarray(columns, dtype=float))
    y = np.asarray(target, dtype=float)
    p, n = G.shape
    if y.shape != (p,):
        raise ValueError(f"target has shape {y.shape}, expected ({p},)")
    if max_iter is None:
        max_iter = 3 * n * max(p, 1)

    scale = np.linalg.norm(G, axis=0)
    live = np.flatnonzero(scale > 1e-13)
    Gn = G[:, live] / scale[live]
    nn = live.size
    coef = np.zeros(nn)
    passive = np.zeros(nn, dtype=bool)
    resid = y.copy()
    grad = Gn.T @ resid
    grad_tol = 1e-11 * (1.0 + float(np.linalg.norm(y)))

    iters = 0
    while (~passive).any() and grad[~passive].max(initial=-np.inf) > grad_tol:
        iters += 1
        if iters > max_iter:
            raise NnlsMaxIterError(f"active-set iterations exceeded {max_iter}")
        masked = np.where(passive, -np.inf, grad)
        passive[int(np.argmax(masked))] = True
        while True:
            sub = np.flatnonzero(passive)
            if sub.size == 0:
                break  # degenerate pivot expelled everything; outer cap applies
            trial = np.zeros(nn)
            trial[sub] = np.linalg.lstsq(Gn[:, sub], y, rcond=None)[0]
            if trial[sub].min() > 0.0:
                coef = trial
                break
            iters += 1
            if iters > max_iter:
                raise NnlsMaxIterError(f"active-set iterations exceeded {max_iter}")
            blocking = sub[trial[sub] <= 0.0]
            denom = coef[blocking] - trial[blocking]
            steps = np.divide(
                coef[blocking], denom, out=np.zeros_like(denom), where=denom > 0.0
            )
            alpha = steps.min()
            coef = coef + alpha * (trial - coef)
            coef[blocking[steps <= alpha + 1e-15]] = 0.0
            passive &= coef > 0.0
        resid = y - Gn @ coef
        grad = Gn.T @ resid

    full = np.zeros(n)
    full[live] = coef / scale[live]
    return full, float(np.linalg.norm(resid))
