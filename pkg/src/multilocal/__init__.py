"""Local community detection across multi-view and multi-domain networks."""

from .model import (MULTI_DOMAIN, MULTI_VIEW, InterLayerEdges, LayerGraph,
                    LocalView, MultiNetwork, NodeRef, init_frontiers,
                    interlayer_row, neighbors)
from .objective import (affiliation_grid, edge_terms, layer_objective,
                        layer_quality_ratio, sweep_affiliations)
from .consensus import (extract_local_inter, map_unified_to_layer,
                        strongest_paths, update_unified, update_weights)
from .expansion import expand_core, expansion_threshold, finalize_communities
from .driver import DetectConfig, DetectionResult, detect, init_seeds
from .metrics import GroundTruth, Scores, aggregate, prf
from .datagen import GenSpec, generate
from .harness import EvalReport, evaluate, sample_seed_nodes
from .io import load_dataset, write_dataset

__version__ = "0.1.0"

__all__ = [
    "MULTI_DOMAIN", "MULTI_VIEW", "InterLayerEdges", "LayerGraph", "LocalView",
    "MultiNetwork", "NodeRef", "init_frontiers", "interlayer_row", "neighbors",
    "affiliation_grid", "edge_terms", "layer_objective", "layer_quality_ratio",
    "sweep_affiliations", "extract_local_inter", "map_unified_to_layer",
    "strongest_paths", "update_unified", "update_weights", "expand_core",
    "expansion_threshold", "finalize_communities", "DetectConfig",
    "DetectionResult", "detect", "init_seeds", "GroundTruth", "Scores",
    "aggregate", "prf", "GenSpec", "generate", "EvalReport", "evaluate",
    "sample_seed_nodes", "load_dataset", "write_dataset",
]
