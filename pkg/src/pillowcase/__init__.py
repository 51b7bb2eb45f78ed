"""Triangulable half-dilation pillowcases: coordinates, flips, symmetry
groups, and the inverse trace problem, with a deterministic CLI on top."""

from .config import DEFAULT_TOL, RunConfig, Tolerances
from .errors import (
    AlgorithmError,
    AmbiguousStatus,
    BelowFour,
    DegenerateInput,
    DegenerateOutput,
    DegenerateTriangle,
    DomainError,
    InvalidTriangulation,
    MarkNotInterior,
    NegativeDeterminant,
    NonConvexQuad,
    NonPositiveLambda,
    NotDelaunayInput,
    OracleDisagreement,
    SelfGluedEdge,
    StepLimitExceeded,
    TableMismatch,
    TraceBelowTwo,
    UnsupportedPair,
)
from .flips import (
    AffineFlipMatrix,
    FlipStep,
    FlipTrace,
    flipping_algorithm,
    phi,
    phi_inverse,
    phi_matrix,
    phi_move,
    phi_normalize,
    psi_matrix,
    reference_psi_matrix,
    violated_phi_index,
)
from .geom import (
    Triangle,
    Vec2,
    angle_at,
    harmonic_index_triangle,
    harmonic_index_triangulation,
    signed_area,
)
from .glued import (
    Face,
    GluedTriangulation,
    classify_combinatorics,
    extract_marked_triple,
    flip_edge,
    glue,
)
from .inverse import (
    SolutionFamily,
    TargetTriple,
    group_solutions,
    s_pm,
    solve_ratios,
)
from .surface import (
    AnglePairs,
    DelaunayStatus,
    MarkedTriangle,
    MarkedTriple,
    StatusKind,
    angle_pairs,
    canonical_equal,
    delaunay_status,
    from_marked_triangle,
    gauge_forms,
    random_marked_triple,
    relisted,
    rotated,
    to_marked_triangle,
    triple_status,
)
from .veech import (
    ClassKind,
    ElementClass,
    GeneratorSet,
    ProjectiveMatrix,
    classify,
    delaunay_normalize,
    delaunay_representatives,
    normalized_trace_sq,
    reference_trace_formulas,
    trace_audit,
    trace_to_length,
    veech_generators,
)

__version__ = "0.1.0"

__all__ = [
    "AffineFlipMatrix",
    "AlgorithmError",
    "AmbiguousStatus",
    "AnglePairs",
    "BelowFour",
    "ClassKind",
    "DEFAULT_TOL",
    "DegenerateInput",
    "DegenerateOutput",
    "DegenerateTriangle",
    "DelaunayStatus",
    "DomainError",
    "ElementClass",
    "Face",
    "FlipStep",
    "FlipTrace",
    "GeneratorSet",
    "GluedTriangulation",
    "InvalidTriangulation",
    "MarkNotInterior",
    "MarkedTriangle",
    "MarkedTriple",
    "NegativeDeterminant",
    "NonConvexQuad",
    "NonPositiveLambda",
    "NotDelaunayInput",
    "OracleDisagreement",
    "ProjectiveMatrix",
    "RunConfig",
    "SelfGluedEdge",
    "SolutionFamily",
    "StatusKind",
    "StepLimitExceeded",
    "TableMismatch",
    "TargetTriple",
    "Tolerances",
    "TraceBelowTwo",
    "Triangle",
    "UnsupportedPair",
    "Vec2",
    "angle_at",
    "angle_pairs",
    "canonical_equal",
    "classify",
    "classify_combinatorics",
    "delaunay_normalize",
    "delaunay_representatives",
    "delaunay_status",
    "extract_marked_triple",
    "flip_edge",
    "flipping_algorithm",
    "from_marked_triangle",
    "gauge_forms",
    "glue",
    "group_solutions",
    "harmonic_index_triangle",
    "harmonic_index_triangulation",
    "normalized_trace_sq",
    "phi",
    "phi_inverse",
    "phi_matrix",
    "phi_move",
    "phi_normalize",
    "psi_matrix",
    "random_marked_triple",
    "reference_psi_matrix",
    "reference_trace_formulas",
    "relisted",
    "rotated",
    "s_pm",
    "signed_area",
    "solve_ratios",
    "to_marked_triangle",
    "trace_audit",
    "trace_to_length",
    "triple_status",
    "veech_generators",
    "violated_phi_index",
]
