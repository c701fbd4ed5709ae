"""Iterated crossing-point closures, plane-graph dilation and cover certificates."""

__version__ = "0.1.0"

from .geometry import (
    BudgetError,
    ExactPoint,
    PointSet,
    Segment,
    contains_five_convex,
    convex_hull,
    in_convex_position,
    orientation,
    point,
    regular_polygon,
    segment_intersection,
)
from .closure import (
    BudgetExceeded,
    ClosureBudgets,
    ClosureMode,
    Stable,
    StabilizesAtRound,
    classify_stability,
    intersection_closure,
    iterate,
)
from .graph import (
    DisconnectedGraph,
    PlaneGraph,
    check_paths_in_ellipses,
    dilation,
    ellipse_width,
    maximal_plane_graph,
    shortest_path,
    validate_plane,
)
from .delaunay import CollinearInput, delaunay
from .cover import cover_radius, density_profile, is_eps_cover, region_A, sample_region
from .certificate import CertificateParams, check_certificate, square_cover_points

__all__ = [
    "BudgetError",
    "ExactPoint",
    "PointSet",
    "Segment",
    "contains_five_convex",
    "convex_hull",
    "in_convex_position",
    "orientation",
    "point",
    "regular_polygon",
    "segment_intersection",
    "BudgetExceeded",
    "ClosureBudgets",
    "ClosureMode",
    "Stable",
    "StabilizesAtRound",
    "classify_stability",
    "intersection_closure",
    "iterate",
    "DisconnectedGraph",
    "PlaneGraph",
    "check_paths_in_ellipses",
    "dilation",
    "ellipse_width",
    "maximal_plane_graph",
    "shortest_path",
    "validate_plane",
    "CollinearInput",
    "delaunay",
    "cover_radius",
    "density_profile",
    "is_eps_cover",
    "region_A",
    "sample_region",
    "CertificateParams",
    "check_certificate",
    "square_cover_points",
]
