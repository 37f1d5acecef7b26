"""Numerical algebraic geometry: homotopy continuation, witness sets, and
Schubert calculus for lines on quadric hypersurfaces in P^4."""

from .cycles import (
    BasisLabel,
    CycleClass,
    DegreeVector,
    GradedBasis,
    IntersectionMatrix,
    builtin_basis,
    class_from_degrees,
    intersect_classes,
    is_duality_basis,
    pairing_degree,
)
from .errors import (
    DegenerateFlag,
    DimensionMismatch,
    GenericityWarning,
    Inconclusive,
    ParseError,
    SingularJacobian,
    SingularMatrix,
    SingularQuadric,
    StartPointError,
    TrackingFailure,
    UnsupportedProduct,
    WitnessKitError,
)
from .grassmann import (
    Flag,
    Line,
    Quadric,
    SchubertIndex,
    SchubertPoset,
    SchubertWitnessSet,
    class_of_variety,
    line_in_schubert,
    lines_on_quadric_witness,
    lines_on_two_quadrics,
    pluecker_coordinates,
    pluecker_distance,
    pluecker_relations_residual,
    random_flag,
    random_quadric,
    schubert_dual,
    schubert_membership,
    schubert_pair_intersection_count,
    schubert_poset,
    schubert_sample,
    schubert_witness_move,
)
from .polysys import (
    Polynomial,
    PolySystem,
    parse,
    poly_det,
    serialize,
    system_from_dict,
    system_to_dict,
    variables,
)
from .seeding import subsystem_rng
from .solver import (
    ALPHA_THRESHOLD,
    Certificate,
    Homotopy,
    ParametricHomotopy,
    PathResult,
    PathStatus,
    Solution,
    SolveResult,
    TrackerSettings,
    alpha_number,
    bezout_start,
    newton_refine,
    newton_step,
    newton_update_norms,
    solve_total_degree,
    track_path,
)
from .witness import (
    LinearSlice,
    WitnessSet,
    product_witness,
    random_slice,
    slice_through_point,
    witness_compute,
    witness_from_dict,
    witness_membership,
    witness_move,
    witness_sample,
    witness_to_dict,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA_THRESHOLD",
    "BasisLabel",
    "Certificate",
    "CycleClass",
    "DegreeVector",
    "DegenerateFlag",
    "DimensionMismatch",
    "Flag",
    "GenericityWarning",
    "GradedBasis",
    "Homotopy",
    "Inconclusive",
    "IntersectionMatrix",
    "Line",
    "LinearSlice",
    "ParametricHomotopy",
    "ParseError",
    "PathResult",
    "PathStatus",
    "Polynomial",
    "PolySystem",
    "Quadric",
    "SchubertIndex",
    "SchubertPoset",
    "SchubertWitnessSet",
    "SingularJacobian",
    "SingularMatrix",
    "SingularQuadric",
    "Solution",
    "SolveResult",
    "StartPointError",
    "TrackerSettings",
    "TrackingFailure",
    "UnsupportedProduct",
    "WitnessKitError",
    "WitnessSet",
    "alpha_number",
    "bezout_start",
    "builtin_basis",
    "class_from_degrees",
    "class_of_variety",
    "intersect_classes",
    "is_duality_basis",
    "line_in_schubert",
    "lines_on_quadric_witness",
    "lines_on_two_quadrics",
    "newton_refine",
    "newton_step",
    "newton_update_norms",
    "pairing_degree",
    "parse",
    "pluecker_coordinates",
    "pluecker_distance",
    "pluecker_relations_residual",
    "poly_det",
    "product_witness",
    "random_flag",
    "random_quadric",
    "random_slice",
    "schubert_dual",
    "schubert_membership",
    "schubert_pair_intersection_count",
    "schubert_poset",
    "schubert_sample",
    "schubert_witness_move",
    "serialize",
    "slice_through_point",
    "solve_total_degree",
    "subsystem_rng",
    "system_from_dict",
    "system_to_dict",
    "track_path",
    "variables",
    "witness_compute",
    "witness_from_dict",
    "witness_membership",
    "witness_move",
    "witness_sample",
    "witness_to_dict",
]
