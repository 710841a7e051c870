"""Linkable Dynkin diagrams, braiding matrices, and their Hopf algebras.

The package decides for a linkable Dynkin diagram of finite or affine
type whether a linkable braiding matrix exists, constructs one, checks
it exhaustively, realizes it over abelian groups, and emits the
presentation of the associated Hopf algebra.
"""

from .braiding import (
    BraidingMatrix,
    OracleResult,
    RootExpr,
    VerificationReport,
    admissible_orders,
    brute_force_exists,
    construct,
    direct_sum,
    ord_diagonal,
    verify,
)
from .cycles import (
    Cycle,
    CycleInvariants,
    absolute_height,
    affine_genus_value,
    cycle_invariants,
    enumerate_cycles,
    finite_genus_value,
    genus,
    genus_gcd,
    height_over,
    level0_vertices,
    natural_orientation,
)
from .diagram import (
    CartanMatrix,
    ComponentType,
    EdgeKind,
    LinkableDynkinDiagram,
    SubDiagram,
    classify_components,
    edge_kind,
    link_connected_components,
    pairwise_linking_consistency,
    validate_cartan,
)
from .errors import (
    DiagonalNotTwo,
    DiagramSyntaxError,
    InadmissibleD,
    IndexOutOfRange,
    LinkConstraintUnsatisfiable,
    LinkdynError,
    Neighbouring,
    NotAPath,
    NotLinkConnected,
    NotNeighbouring,
    NotPrime,
    NotSymmetrizable,
    OrderMismatch,
    OrderNotDividing,
    PathInconsistency,
    PositiveOffDiagonal,
    ScaleExceeded,
    SemanticError,
    ShapeParameterMismatch,
    UnclassifiedPath,
    UnsupportedComponentType,
    UnsupportedEdgeInMode,
    VertexNotOnCycle,
    ZeroAsymmetry,
)
from .existence import (
    ExistenceReport,
    check,
    check_affine,
    check_finite,
    excluded_case_matrix,
    selflink_genus,
    selflink_order_constraint,
)
from .fields import CYCLOTOMIC, FieldSpec, is_prime
from .presentation import (
    HopfPresentation,
    QValue,
    check_identity,
    cyclotomic_polynomial,
    emit_presentation,
    qbinomial,
    qfactorial,
    qnumber,
    serre_coefficients,
)
from .realization import (
    A4Solution,
    LinkingDatum,
    a4_realizable_zp2,
    a4_solve_zp2,
    count_magic_solutions,
    double_datum,
    find_symmetrizer,
    magic_pairs,
    max_diagram_note_zp2,
    realize_free,
    realize_mod_p,
    sqrt_mod,
)

__version__ = "0.1.0"

__all__ = [
    "BraidingMatrix",
    "OracleResult",
    "RootExpr",
    "VerificationReport",
    "admissible_orders",
    "brute_force_exists",
    "construct",
    "direct_sum",
    "ord_diagonal",
    "verify",
    "Cycle",
    "CycleInvariants",
    "absolute_height",
    "affine_genus_value",
    "cycle_invariants",
    "enumerate_cycles",
    "finite_genus_value",
    "genus",
    "genus_gcd",
    "height_over",
    "level0_vertices",
    "natural_orientation",
    "CartanMatrix",
    "ComponentType",
    "SubDiagram",
    "EdgeKind",
    "LinkableDynkinDiagram",
    "classify_components",
    "link_connected_components",
    "edge_kind",
    "pairwise_linking_consistency",
    "validate_cartan",
    "LinkdynError",
    "DiagonalNotTwo",
    "DiagramSyntaxError",
    "InadmissibleD",
    "IndexOutOfRange",
    "LinkConstraintUnsatisfiable",
    "Neighbouring",
    "NotAPath",
    "NotLinkConnected",
    "NotNeighbouring",
    "NotPrime",
    "NotSymmetrizable",
    "OrderMismatch",
    "OrderNotDividing",
    "PathInconsistency",
    "PositiveOffDiagonal",
    "ScaleExceeded",
    "SemanticError",
    "ShapeParameterMismatch",
    "UnclassifiedPath",
    "UnsupportedComponentType",
    "UnsupportedEdgeInMode",
    "VertexNotOnCycle",
    "ZeroAsymmetry",
    "ExistenceReport",
    "check",
    "check_affine",
    "check_finite",
    "excluded_case_matrix",
    "selflink_genus",
    "selflink_order_constraint",
    "CYCLOTOMIC",
    "FieldSpec",
    "is_prime",
    "HopfPresentation",
    "QValue",
    "check_identity",
    "cyclotomic_polynomial",
    "emit_presentation",
    "qbinomial",
    "qfactorial",
    "qnumber",
    "serre_coefficients",
    "A4Solution",
    "LinkingDatum",
    "a4_realizable_zp2",
    "a4_solve_zp2",
    "count_magic_solutions",
    "double_datum",
    "find_symmetrizer",
    "magic_pairs",
    "max_diagram_note_zp2",
    "realize_free",
    "realize_mod_p",
    "sqrt_mod",
]
