"""Consistency tests and constructed value functions for pairwise preferences.

Given alternatives scored on p criteria and judgements "x_j is better than
the fixed reference x_k", decide whether some increasing quasi-concave
value function reproduces the judgements, and build explicit witnesses
(a concave signed-distance function, a strictly separating perturbed one,
and a linear one) whenever the answer is yes.
"""

from .consistency import (
    EpsilonSearchConfig,
    ConsistencyReport,
    PointednessResult,
    Z_STAR_TOL,
    consistency_verdict,
    epsilon_search,
    extract_linear_weights,
    test_pointedness,
)
from .cones import (
    FacetCone,
    GeneratorCone,
    MembershipClass,
    classify,
    dist_to_cone,
    dist_to_complement,
    dual_hrep,
    extreme_rays,
    is_pointed_geometric,
    nnls,
    preference_cone,
)
from .errors import (
    DimensionMismatchError,
    DimensionTooLargeError,
    InvalidInstanceError,
    MaxIterExceededError,
    NnlsMaxIterError,
    NotPointedError,
    ParseError,
    PrefconeError,
    SingularBasisError,
    TooLargeError,
    UnsupportedDimensionError,
    WholeSpaceError,
)
from .instance import (
    PreferenceInstance,
    ValidationReport,
    generators,
    parse_instance,
    require_valid,
    serialize_instance,
    validate,
)
from .lp import LPSolution, StandardLP, build_pointedness_lp, solve
from .plotting import plot2d
from .valuefn import (
    ValueFunctionHandle,
    evaluate,
    evaluate_batch,
    make_linear,
    make_psi,
    make_vartheta,
)

__version__ = "0.1.0"

__all__ = [
    "ConsistencyReport",
    "DimensionMismatchError",
    "DimensionTooLargeError",
    "EpsilonSearchConfig",
    "FacetCone",
    "GeneratorCone",
    "InvalidInstanceError",
    "LPSolution",
    "MaxIterExceededError",
    "MembershipClass",
    "NnlsMaxIterError",
    "NotPointedError",
    "ParseError",
    "PointednessResult",
    "PrefconeError",
    "PreferenceInstance",
    "SingularBasisError",
    "StandardLP",
    "TooLargeError",
    "UnsupportedDimensionError",
    "ValidationReport",
    "ValueFunctionHandle",
    "WholeSpaceError",
    "Z_STAR_TOL",
    "build_pointedness_lp",
    "classify",
    "consistency_verdict",
    "dist_to_cone",
    "dist_to_complement",
    "dual_hrep",
    "epsilon_search",
    "evaluate",
    "evaluate_batch",
    "extract_linear_weights",
    "extreme_rays",
    "generators",
    "is_pointed_geometric",
    "make_linear",
    "make_psi",
    "make_vartheta",
    "nnls",
    "parse_instance",
    "plot2d",
    "preference_cone",
    "require_valid",
    "serialize_instance",
    "solve",
    "test_pointedness",
    "validate",
]
