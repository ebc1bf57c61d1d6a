"""Landmark-based approximate geodesics on weighted graphs and triangle meshes."""

__version__ = "0.1.0"

from .analysis import (
    BoundCheck,
    StretchReport,
    check_radius_sandwich,
    check_detour_inequality,
    check_kcenter_transfer,
    check_fps_guarantee,
    stretch_fast,
    stretch_naive,
)
from .estimators import FarthestPointSampler, LandmarkDistanceOracle
from .exhaustive import (
    ExhaustiveResult,
    exists_sources_with_stretch,
    minimum_vertex_cover,
    optimal_kcenter_sources,
    optimal_stretch_sources,
)
from .graph import EdgeStats, Graph, Mesh, build_graph, edge_stats, mesh_to_graph, validate_triangle_mesh
from .oracle import ApproxDistance, Oracle, approx_distance, build_oracle, load_oracle, nearest_source, save_oracle
from .reduction import (
    GadgetParams,
    PlanarEmbedding,
    ReductionInstance,
    SubdivisionRecord,
    gadget_case_table,
    gadget_replace,
    subdivide,
    stretch_equivalence_check,
    vc_equivalence_check,
)
from .sampling import SourceSet, farthest_point_sampling, kcenter_radius
from .shortest_path import DistanceRow, DistanceTable, edge_endpoint_distance, multi_sssp, sssp

__all__ = [
    "ApproxDistance",
    "BoundCheck",
    "DistanceRow",
    "DistanceTable",
    "EdgeStats",
    "ExhaustiveResult",
    "FarthestPointSampler",
    "GadgetParams",
    "Graph",
    "LandmarkDistanceOracle",
    "Mesh",
    "Oracle",
    "PlanarEmbedding",
    "ReductionInstance",
    "SourceSet",
    "StretchReport",
    "SubdivisionRecord",
    "approx_distance",
    "build_graph",
    "build_oracle",
    "check_radius_sandwich",
    "check_detour_inequality",
    "check_kcenter_transfer",
    "check_fps_guarantee",
    "edge_endpoint_distance",
    "edge_stats",
    "exists_sources_with_stretch",
    "farthest_point_sampling",
    "gadget_case_table",
    "gadget_replace",
    "kcenter_radius",
    "load_oracle",
    "mesh_to_graph",
    "minimum_vertex_cover",
    "multi_sssp",
    "nearest_source",
    "optimal_kcenter_sources",
    "optimal_stretch_sources",
    "save_oracle",
    "sssp",
    "stretch_fast",
    "stretch_naive",
    "subdivide",
    "stretch_equivalence_check",
    "validate_triangle_mesh",
    "vc_equivalence_check",
]
