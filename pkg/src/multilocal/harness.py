"""Seed-protocol evaluation harness: run many seeds, score, aggregate."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .driver import DetectConfig, detect
from .metrics import GroundTruth, Scores, aggregate, prf
from .model import MULTI_VIEW, MultiNetwork, NodeRef


@dataclass
class SeedReport:
    seed: NodeRef
    per_layer: list[Scores]
    mean: Scores


@dataclass
class EvalReport:
    seeds: list[SeedReport]
    overall: Scores


def default_seed_nodes(net: MultiNetwork) -> list[int]:
    """Every node of the first layer; the standard protocol for both kinds."""
    return list(range(net.node_count(0)))


def sample_seed_nodes(candidates: list[int], count: int, rng_seed: int) -> list[int]:
    """Deterministic without-replacement sample, kept in ascending order."""
    if count >= len(candidates):
        return sorted(candidates)
    rng = np.random.default_rng(rng_seed)
    picked = rng.choice(np.asarray(sorted(candidates)), size=count, replace=False)
    return sorted(int(x) for x in picked)


def score_seed(net: MultiNetwork, truth: GroundTruth, cfg: DetectConfig,
               seed: NodeRef) -> SeedReport:
    """Detect for one seed and score every layer against its truth community."""
    result = detect(net, seed, cfg)
    rows = []
    for layer in range(net.layer_count):
        truth_set = truth.seed_truth(seed, layer)
        rows.append(prf(result.communities.get(layer, set()), truth_set))
    return SeedReport(seed=seed, per_layer=rows, mean=aggregate([rows]))


_WORKER_STATE: dict = {}


def _init_worker(net, truth, cfg):
    _WORKER_STATE["args"] = (net, truth, cfg)


def _score_node(node: int) -> SeedReport:
    net, truth, cfg = _WORKER_STATE["args"]
    return score_seed(net, truth, cfg, NodeRef(0, node))


def evaluate(net: MultiNetwork, truth: GroundTruth, cfg: DetectConfig | None = None,
             seed_nodes: list[int] | None = None, jobs: int = 1) -> EvalReport:
    """Score a batch of seeds (layer 0 nodes) and aggregate.

    ``jobs`` > 1 fans seeds out across a process pool; results are merged in
    seed order, so the report is identical either way.
    """
    cfg = cfg or DetectConfig()
    if seed_nodes is None:
        seed_nodes = default_seed_nodes(net)
    seed_nodes = sorted(seed_nodes)
    for layer in range(net.layer_count):
        missing = truth.missing_nodes(layer, range(net.node_count(layer)))
        if missing:
            raise ValueError(f"ground truth is missing labels in layer {layer}: "
                             f"nodes {missing[:10]}{'...' if len(missing) > 10 else ''}")
    if jobs > 1 and len(seed_nodes) > 1:
        with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker,
                                 initargs=(net, truth, cfg)) as pool:
            reports = list(pool.map(_score_node, seed_nodes))
    else:
        reports = [score_seed(net, truth, cfg, NodeRef(0, node)) for node in seed_nodes]
    overall = aggregate([r.per_layer for r in reports])
    return EvalReport(seeds=reports, overall=overall)
