"""tritop: a computational kernel for triangulated 3-manifolds."""

from .angles import (
    AngleVector,
    angle_system,
    enumerate_taut,
    enumerate_vertex_angle_structures,
    is_taut,
)
from .census import CensusSpec, enumerate_census
from .cone import ConeProblem, Ray, RayTrie, adjacent, enumerate_extreme_rays
from .constructions import (
    figure_eight_complement,
    lens_3_1,
    one_tet_ball,
    projective_space,
    sphere_bundle,
    three_sphere,
)
from .homology import HomologySummary, first_homology, smith_normal_form
from .isosig import MalformedSignature, decode, encode, is_isomorphic
from .moves import (
    ALL_KINDS,
    MOVE_DELTAS,
    CollapseGraph,
    CollapseOutcome,
    MoveKind,
    collapse_edge,
    enumerate_moves,
    perform_move,
    test_move,
)
from .recognize import (
    DecompositionResult,
    connected_sum_decomposition,
    is_ball,
    is_three_sphere,
    is_zero_efficient,
)
from .simplify import (
    BfsFrontier,
    SimplifyReport,
    simplify_exhaustive,
    simplify_fast,
)
from .skeleton import (
    Classification,
    LinkInfo,
    Skeleton,
    classify,
    compute_skeleton,
    edge_fan,
    vertex_link,
)
from .surfaces import (
    QUAD,
    QUAD_OCT,
    STANDARD,
    STANDARD_AN,
    SurfaceAnalysis,
    SurfaceVector,
    analyze,
    crush,
    enumerate_vertex_surfaces,
    euler_coefficients,
    find_almost_normal_sphere,
    find_nontrivial_normal_sphere,
    matching_system,
    reconstruct_standard,
    vertex_link_vector,
)
from .triangulation import (
    PreconditionError,
    Triangulation,
    barycentric_subdivide,
    build_from_gluings,
    cone_boundary,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "adjacent",
    "ALL_KINDS",
    "analyze",
    "angle_system",
    "AngleVector",
    "barycentric_subdivide",
    "BfsFrontier",
    "build_from_gluings",
    "CensusSpec",
    "Classification",
    "classify",
    "collapse_edge",
    "CollapseGraph",
    "CollapseOutcome",
    "compute_skeleton",
    "cone_boundary",
    "ConeProblem",
    "connected_sum_decomposition",
    "crush",
    "decode",
    "DecompositionResult",
    "edge_fan",
    "encode",
    "enumerate_census",
    "enumerate_extreme_rays",
    "enumerate_moves",
    "enumerate_taut",
    "enumerate_vertex_angle_structures",
    "enumerate_vertex_surfaces",
    "euler_coefficients",
    "figure_eight_complement",
    "find_almost_normal_sphere",
    "find_nontrivial_normal_sphere",
    "first_homology",
    "HomologySummary",
    "is_ball",
    "is_isomorphic",
    "is_taut",
    "is_three_sphere",
    "is_zero_efficient",
    "lens_3_1",
    "LinkInfo",
    "MalformedSignature",
    "matching_system",
    "MOVE_DELTAS",
    "MoveKind",
    "one_tet_ball",
    "perform_move",
    "PreconditionError",
    "projective_space",
    "QUAD",
    "QUAD_OCT",
    "Ray",
    "RayTrie",
    "reconstruct_standard",
    "simplify_exhaustive",
    "simplify_fast",
    "SimplifyReport",
    "Skeleton",
    "smith_normal_form",
    "sphere_bundle",
    "STANDARD",
    "STANDARD_AN",
    "SurfaceAnalysis",
    "SurfaceVector",
    "test_move",
    "three_sphere",
    "Triangulation",
    "vertex_link",
    "vertex_link_vector",
]
