"""homodim: estimate a manifold decomposition T^q x R^p from point clouds.

The pipeline runs point cloud -> Vietoris-Rips filtration -> persistent
homology over Z2 -> smoothed persistence landscapes -> local-maxima
counts -> decomposition estimate with a recommended width interval.
"""

from .dimension import (DecompositionEstimate, HomologyCounts, QEstimate,
                        binomial, estimate, load_estimate, reconcile_single_q,
                        recommended_width, save_estimate, solve_q)
from .errors import (CapacityExceeded, DegenerateInput, DegeneratePair,
                     HomodimError, IndexOutOfRange, InvalidSpec,
                     MalformedInput, MissingFace, Overflow)
from .filtration import (Filtration, FiltrationParams, build_filtration,
                         export_jsonl, filtration_grid)
from .landscape import (MaximaCount, PersistenceLandscape, SmoothingParams,
                        TentFunction, build_landscape, count_maxima,
                        load_landscape, merge_counts, save_landscape, smooth,
                        tent)
from .persistence import (BettiCurve, BettiTable, BoundaryMatrix,
                          PersistenceDiagram, PersistencePair, ReducedMatrix,
                          betti_curve, boundary_matrix, brute_force_betti,
                          diagram, load_diagrams, multiplicity, reduce,
                          save_diagrams, two_parameter_betti)
from .pipeline import PipelineConfig, config_from_toml, run_pipeline
from .plotting import render_diagram_svg, render_landscape_svg
from .pointcloud import (DistanceMatrix, ManifoldSpec, PointCloud,
                         load_points, pairwise_distances, sample_manifold,
                         save_points)

__version__ = "0.1.0"

__all__ = [
    "BettiCurve", "BettiTable", "BoundaryMatrix", "CapacityExceeded",
    "DecompositionEstimate", "DegenerateInput", "DegeneratePair",
    "DistanceMatrix", "Filtration", "FiltrationParams", "HomodimError",
    "HomologyCounts", "IndexOutOfRange", "InvalidSpec", "MalformedInput",
    "ManifoldSpec", "MaximaCount", "MissingFace", "Overflow",
    "PersistenceDiagram", "PersistenceLandscape", "PersistencePair",
    "PipelineConfig", "PointCloud", "QEstimate", "ReducedMatrix",
    "SmoothingParams", "TentFunction", "betti_curve", "binomial",
    "boundary_matrix", "brute_force_betti", "build_filtration",
    "build_landscape", "config_from_toml", "count_maxima", "diagram",
    "estimate", "export_jsonl", "filtration_grid", "load_diagrams",
    "load_estimate", "load_landscape", "load_points", "merge_counts",
    "multiplicity", "pairwise_distances", "reconcile_single_q",
    "recommended_width", "reduce", "render_diagram_svg",
    "render_landscape_svg", "run_pipeline", "sample_manifold",
    "save_diagrams", "save_estimate", "save_landscape", "save_points",
    "smooth", "solve_q", "tent", "two_parameter_betti",
]
