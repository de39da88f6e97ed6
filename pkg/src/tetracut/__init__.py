"""Geodesics, cut loci and a geodesic motion planner on a regular tetrahedron.

The surface is the boundary of a regular tetrahedron with vertices a, b, c, d
and edge length 2, carrying its intrinsic flat metric.  The package computes
minimal geodesics by exhaustive unfolding, closed-form cut-locus diagrams for
every source point, and an explicit five-cell decomposition of the pair space
with a continuous geodesic choice on each cell.
"""

from .errors import (
    BadCell,
    BadParams,
    BadSum,
    DepthTooLarge,
    FaceMismatch,
    NegativeWeight,
    NoPathFound,
    SamePoint,
    TetracutError,
    UnknownFigure,
)
from .surface import (
    ALL_ISOMETRIES,
    EDGE_NAMES,
    FACE_NAMES,
    FACES,
    IDENTITY,
    SQRT3,
    STRATA,
    VERTICES,
    CanonicalPosition,
    Isometry,
    SurfacePoint,
    apply_isometry,
    centroid,
    edge_midpoint,
    make_point,
    parse_point,
    reduce_to_canonical,
    vertex_point,
)
from .oracle import (
    Crossing,
    Geodesic,
    GeodesicSet,
    distance,
    initial_directions,
    min_geodesics,
    multiplicity,
    same_point,
    validate_geodesic,
)
from .cutlocus import (
    CanonicalDiagram,
    CutLocusArc,
    CutLocusGraph,
    ExpandedCutLocus,
    SpecialPoints,
    canonical_diagram,
    corner_formulas,
    cut_locus_graph,
    expanded_cut_locus,
    is_on_cut_locus,
    special_points,
)
from .planner import (
    CELLS,
    AuditReport,
    PartitionLabel,
    PlanResult,
    classify,
    continuity_audit,
    oracle_audit,
    partition_audit,
    phi,
)
from .render import FIGURES, render_figure

__version__ = "0.1.0"

__all__ = [
    "ALL_ISOMETRIES",
    "AuditReport",
    "BadCell",
    "BadParams",
    "BadSum",
    "CELLS",
    "CanonicalDiagram",
    "CanonicalPosition",
    "Crossing",
    "CutLocusArc",
    "CutLocusGraph",
    "DepthTooLarge",
    "EDGE_NAMES",
    "ExpandedCutLocus",
    "FACES",
    "FACE_NAMES",
    "FIGURES",
    "FaceMismatch",
    "Geodesic",
    "GeodesicSet",
    "IDENTITY",
    "Isometry",
    "NegativeWeight",
    "NoPathFound",
    "PartitionLabel",
    "PlanResult",
    "SQRT3",
    "STRATA",
    "SamePoint",
    "SpecialPoints",
    "SurfacePoint",
    "TetracutError",
    "UnknownFigure",
    "VERTICES",
    "apply_isometry",
    "canonical_diagram",
    "centroid",
    "classify",
    "continuity_audit",
    "corner_formulas",
    "cut_locus_graph",
    "distance",
    "edge_midpoint",
    "expanded_cut_locus",
    "initial_directions",
    "is_on_cut_locus",
    "make_point",
    "min_geodesics",
    "multiplicity",
    "oracle_audit",
    "parse_point",
    "partition_audit",
    "phi",
    "reduce_to_canonical",
    "render_figure",
    "same_point",
    "special_points",
    "validate_geodesic",
    "vertex_point",
]
