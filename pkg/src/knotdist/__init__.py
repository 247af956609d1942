"""knotdist: exact distortion invariants of lattice knots.

Vertex distortion with complete witness sets, the curve-wide taxicab
distortion via doubling, midpoint pair structure, unknot certificates,
conformation generators and a knot file format, all in exact integer
and rational arithmetic.
"""

from .engine import (
    DistortionReport,
    HeatmapRow,
    brute_force_vm_distortion,
    euclidean_vertex_lower_bound,
    gromov1_distortion,
    heatmap,
    vertex_distortion,
    vertex_distortion_with_heatmap,
)
from .generators import (
    GeneratorError,
    GeneratorSpec,
    exhaustive_small,
    random_polygon,
    rectangle,
    torus_knot,
)
from .knotfile import (
    KnotFileError,
    knot_from_moves,
    load_knot,
    move_string,
    parse_knot,
    save_knot,
    serialize,
    serialize_moves,
    serialize_vertices,
)
from .lattice import (
    Axis,
    Edge,
    InvalidKnotError,
    Isometry,
    LatticeKnot,
    LatticePoint,
    Stick,
    ValidationResult,
    Violation,
    decompose_sticks,
    lattice_isometries,
    midpoints,
    scale,
    transform,
    validate,
)
from .metrics import (
    ArcPosition,
    NotOnKnotError,
    Ratio,
    arc_distance,
    arc_position,
    distortion_ratio,
    euclidean_ratio_squared,
    taxicab_distance,
)
from .midpoint_analysis import (
    INCONCLUSIVE,
    THRESHOLD_HIGH,
    THRESHOLD_LOW,
    UNKNOT_CERTIFIED,
    Certificate,
    MidpointPairClass,
    certify_unknot,
    classify_pair,
    dominating_vertex_pair,
    neighbors,
)

__version__ = "0.1.0"

__all__ = [
    "ArcPosition",
    "Axis",
    "Certificate",
    "DistortionReport",
    "Edge",
    "GeneratorError",
    "GeneratorSpec",
    "HeatmapRow",
    "INCONCLUSIVE",
    "InvalidKnotError",
    "Isometry",
    "KnotFileError",
    "LatticeKnot",
    "LatticePoint",
    "MidpointPairClass",
    "NotOnKnotError",
    "Ratio",
    "Stick",
    "THRESHOLD_HIGH",
    "THRESHOLD_LOW",
    "UNKNOT_CERTIFIED",
    "ValidationResult",
    "Violation",
    "arc_distance",
    "arc_position",
    "brute_force_vm_distortion",
    "certify_unknot",
    "classify_pair",
    "decompose_sticks",
    "distortion_ratio",
    "dominating_vertex_pair",
    "euclidean_ratio_squared",
    "euclidean_vertex_lower_bound",
    "exhaustive_small",
    "gromov1_distortion",
    "heatmap",
    "knot_from_moves",
    "lattice_isometries",
    "load_knot",
    "midpoints",
    "move_string",
    "neighbors",
    "parse_knot",
    "random_polygon",
    "rectangle",
    "save_knot",
    "scale",
    "serialize",
    "serialize_moves",
    "serialize_vertices",
    "taxicab_distance",
    "torus_knot",
    "transform",
    "validate",
    "vertex_distortion",
    "vertex_distortion_with_heatmap",
]
