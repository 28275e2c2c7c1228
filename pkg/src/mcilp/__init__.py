"""Exact engine for multicriteria integer linear programs in fixed dimension.

Feasible sets, their outcome images, Pareto frontiers, and dominated regions
are all carried as short rational generating functions, so counting is exact,
enumeration streams in any prescribed term order with bounded delay, and
nearest-point selection is exact under polyhedral norms and certified
(1+eps)-approximate under polynomial pseudo-norms.

The compiled kernel backend is chosen at import; set MCILP_PURE_PYTHON=1 to
force the pure-Python twins.
"""

from ._kernels import BACKEND
from .enumeration import EnumerationMetrics, TermOrder, enumerate_support
from .errors import (
    DegenerateSubstitution,
    DimensionMismatch,
    EmptyPolyhedron,
    EmptySet,
    Error,
    NegativeMoment,
    NonGenericLambda,
    NonNormalizedInput,
    NonSimplicialCone,
    ParseError,
    TooLarge,
    UnboundedPolyhedron,
    UniverseViolation,
)
from .genfunc import (
    SRF,
    expand_window,
    format_srf,
    gf_of_box,
    gf_of_polytope,
    monomial_substitution,
    parse_srf,
    partial_specialize_tail,
    specialize_count,
    weighted_specialize,
)
from .pareto import (
    ParetoHandles,
    Problem,
    compute_handles,
    count_pareto,
    dominated_gf,
    format_problem,
    graph_gf,
    ideal_point,
    outcome_window,
    pareto_gf,
    parse_problem,
    strategies_gf,
)
from .polyhedra import Box, Polyhedron
from .select import (
    OddLp,
    Polynomial,
    PolyhedralNorm,
    PseudoNorm,
    enumerate_by_distance,
    fptas_max_polynomial,
    fptas_nearest_pseudonorm,
    minimize_linear_over_set,
    nearest_odd_lp,
    nearest_polyhedral,
    parse_norm,
)
from .setops import boolean_combine, hadamard, intersect, shift, simplify

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Box",
    "DegenerateSubstitution",
    "DimensionMismatch",
    "EmptyPolyhedron",
    "EmptySet",
    "EnumerationMetrics",
    "Error",
    "NegativeMoment",
    "NonGenericLambda",
    "NonNormalizedInput",
    "NonSimplicialCone",
    "OddLp",
    "ParetoHandles",
    "ParseError",
    "PolyhedralNorm",
    "Polyhedron",
    "Polynomial",
    "Problem",
    "PseudoNorm",
    "SRF",
    "TermOrder",
    "TooLarge",
    "UnboundedPolyhedron",
    "UniverseViolation",
    "boolean_combine",
    "compute_handles",
    "count_pareto",
    "dominated_gf",
    "enumerate_by_distance",
    "enumerate_support",
    "expand_window",
    "format_problem",
    "format_srf",
    "fptas_max_polynomial",
    "fptas_nearest_pseudonorm",
    "gf_of_box",
    "gf_of_polytope",
    "graph_gf",
    "hadamard",
    "ideal_point",
    "intersect",
    "minimize_linear_over_set",
    "monomial_substitution",
    "nearest_odd_lp",
    "nearest_polyhedral",
    "outcome_window",
    "pareto_gf",
    "parse_norm",
    "parse_problem",
    "parse_srf",
    "partial_specialize_tail",
    "shift",
    "simplify",
    "specialize_count",
    "strategies_gf",
    "weighted_specialize",
    "__version__",
]
