"""weylgale: exact combinatorial birational geometry of blowups of
projective space at n+4 general points.

Weyl-group actions on Picard lattices, Gale duality of point
configurations, the K-negative wall-and-chamber decomposition of the
ample cone of the blown-up plane, and the determinant map translating it
into cones on the blown-up projective space.  All arithmetic is exact.
"""

from .errors import (
    BoundaryUndecidableError,
    BoundError,
    ContextError,
    DegenerateError,
    DimensionError,
    DomainError,
    HypothesisError,
    InfiniteWallsError,
    MapError,
    OnWallError,
    RegionError,
    RootError,
    VerificationError,
    WeylGaleError,
)
from .piclattice import (
    BilinearForm,
    ChernTriple,
    LatticeContext,
    PicClass,
    chi_line_bundle,
    chi_sheaf,
    coble_pair,
    make_context,
    moduli_dimension,
    pairing_family,
    surface_context,
    symmetric_polarization,
)
from .weylgroup import (
    OrbitFamily,
    ReductionResult,
    RelationReport,
    Root,
    apply_generator,
    apply_word,
    cremona,
    cremona_reduce,
    equivariant_map,
    inverse_word,
    kperp_isometry,
    marking_reversal,
    orbit_classify,
    orbit_enumerate,
    reflect,
    simple_root,
    verify_relations,
)
from .galedual import (
    PointConfiguration,
    dual_round_trip,
    duality_certificate,
    gale_dual,
    general_position,
    projective_equivalent,
)
from .conegeom import (
    CONIC_FAMILY,
    CUBIC_FAMILY,
    LINE_FAMILY,
    MINUS_TWO_FAMILY,
    ConicDualDecomposition,
    CurveFamilySpec,
    EffectiveDecomposition,
    MembershipResult,
    NefBoundaryKind,
    NefBoundaryResult,
    NoetherReport,
    Region,
    classify_nef_boundary,
    cone_membership,
    decompose_conic_dual,
    decompose_effective,
    enumerate_family_below,
    family_classes_up_to_degree,
    is_ample_kneg,
    is_nef_kneg,
    noether_check,
)
from .wallscan import (
    Chamber,
    ChamberEdge,
    ChamberGraph,
    ChamberNode,
    CrossingKind,
    IsoSide,
    SegmentScanResult,
    Wall,
    WallCrossing,
    chamber_graph,
    chamber_of,
    crossing_data,
    find_wall_witness,
    geometric_dimension,
    is_numerical_rational,
    is_wall_witness,
    local_walls,
    project_to_hyperplane,
    segment_scan,
    standard_chamber,
    standard_chamber_rep,
    standard_chamber_walls,
)
from .linmap import LinearMap
from .morimap import (
    ConeFacet,
    CurveClass,
    DeterminantMapReport,
    EffectiveConeReport,
    NefConeImage,
    determinant_map,
    effective_cone_check,
    gale_extension_check,
    matched_generator,
    nef_cone_image,
    verify_determinant_map,
    wall_to_curve,
)

__version__ = "0.1.0"
