"""End-to-end detection for one seed: init, alternating updates, expansion."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .model import MULTI_VIEW, LocalView, MultiNetwork, NodeRef, init_frontiers
from . import consensus, expansion
from .objective import affiliation_grid, layer_objective, sweep_affiliations

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DetectConfig:
    """Tunable knobs for one detection run.

    ``beta`` is the affiliation regularizer and ``top_t`` the number of
    inter-layer images seeding each non-seed layer of a multi-domain network;
    the defaults are the empirically best-performing values.
    """

    beta: float = 1e-4
    top_t: int = 11
    max_iter: int = 20
    unnormalized_consensus: bool = False
    grid_size: int = 21

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.top_t < 1:
            raise ValueError("top_t must be a positive integer")
        if self.max_iter < 1:
            raise ValueError("max_iter must be a positive integer")
        if self.grid_size < 2:
            raise ValueError("grid_size must be at least 2")


@dataclass
class DetectionResult:
    communities: dict[int, set[int]]
    affiliations: dict[int, dict[int, float]]
    weights: dict[int, float]
    unified: dict[int, float]
    blends: dict[int, dict[int, float]]
    iterations: int
    converged: bool
    access_counts: dict[int, int]
    excluded_layers: tuple[int, ...]
    trace: list[dict] = field(default_factory=list)


def init_seeds(net: MultiNetwork, seed: NodeRef, cfg: DetectConfig) -> dict[int, set[int]]:
    """Seed sets per layer for one query node.

    Multi-view layers all start from the seed node itself. In a multi-domain
    network each other layer starts from the ``top_t`` strongest inter-layer
    images of the seed (ties broken toward smaller node ids), found by
    propagating the seed's sparse inter-layer row along simple layer paths;
    only rows of nodes already reached are ever read. Layers with no images
    are left unseeded and excluded from the run.
    """
    if not (0 <= seed.layer < net.layer_count):
        raise ValueError(f"layer out of range: {seed.layer}")
    if not (0 <= seed.node < net.node_count(seed.layer)):
        raise ValueError(f"node out of range: {seed.node}")
    if net.kind == MULTI_VIEW:
        return {w: {seed.node} for w in range(net.layer_count)}

    reach = _seed_reach(net, seed)
    seeds = {seed.layer: {seed.node}}
    for w in range(net.layer_count):
        if w == seed.layer:
            continue
        row = reach.get(w, {})
        if not row:
            logger.warning("layer %d has no inter-layer connectivity from the seed; "
                           "excluding it from the run", w)
            continue
        ranked = sorted(row.items(), key=lambda kv: (-kv[1], kv[0]))
        seeds[w] = {node for node, _ in ranked[: cfg.top_t]}
    return seeds


def _seed_reach(net: MultiNetwork, seed: NodeRef) -> dict[int, dict[int, float]]:
    """Strongest path-product strengths from the seed into every layer."""
    best: dict[int, dict[int, float]] = {}

    def walk(layer: int, row: dict[int, float], used: frozenset[int]) -> None:
        for nxt in range(net.layer_count):
            if nxt in used or not net.has_inter(layer, nxt):
                continue
            mat = net.inter_matrix(layer, nxt)
            # row-vector times matrix along this path; max across paths below
            nxt_row: dict[int, float] = {}
            for i in sorted(row):
                s = row[i]
                for j, w in sorted(mat.row(i).items()):
                    nxt_row[j] = nxt_row.get(j, 0.0) + s * w
            nxt_row = {j: v for j, v in nxt_row.items() if v > 0.0}
            if not nxt_row:
                continue
            dst = best.setdefault(nxt, {})
            for j, v in nxt_row.items():
                if v > dst.get(j, 0.0):
                    dst[j] = v
            walk(nxt, nxt_row, used | {nxt})

    walk(seed.layer, {seed.node: 1.0}, frozenset({seed.layer}))
    return best


def detect(net: MultiNetwork, seed: NodeRef, cfg: DetectConfig | None = None) -> DetectionResult:
    """Find the community containing ``seed`` in every layer.

    Runs the full loop: frontier init, affiliation init (core 1, boundary
    0.5, shell 0, boundary refined by one consensus-free sweep), alternating
    affiliation / weight / unified updates, threshold expansion, and state
    resizing, until every core set survives an iteration unchanged or the
    iteration cap is hit. Deterministic for fixed inputs and config.

    Sweeps only ever move boundary affiliations: the core is held at 1 and
    the shell at 0 until expansion promotes nodes inward. Leaving the shell
    free lets barely-connected shell nodes drift up to ~0.1 purely to bulk
    the ratio denominator, which then leaks them into the final community
    whenever a layer's frontier stalls early.
    """
    cfg = cfg or DetectConfig()
    grid = affiliation_grid(cfg.grid_size)
    seeds = init_seeds(net, seed, cfg)
    active = sorted(seeds)
    excluded = tuple(w for w in range(net.layer_count) if w not in seeds)
    view = init_frontiers(net, seeds)

    affils: dict[int, dict[int, float]] = {}
    for w in active:
        vals = {i: 1.0 for i in view.core(w)}
        vals.update({i: 0.5 for i in view.boundary(w)})
        vals.update({i: 0.0 for i in view.shell(w)})
        affils[w] = vals
        # refine boundary values only: consensus off, core and shell pinned
        affils[w] = sweep_affiliations(
            view, w, affils[w], beta=cfg.beta,
            pinned=frozenset(view.core(w) | view.shell(w)), grid=grid,
        )

    weights = {w: 1.0 / net.layer_count for w in active}
    cross_maps = expansion.build_cross_maps(net, view, seed.layer, active)
    index = expansion.unified_index(view, seed.layer, cross_maps)
    unified = consensus.update_unified(affils, weights, cross_maps, index,
                                       normalized=not cfg.unnormalized_consensus)

    trace: list[dict] = []
    converged = False
    iterations = 0
    for _ in range(cfg.max_iter):
        iterations += 1
        step = {"iteration": iterations, "layers": {}}
        for w in active:
            before = layer_objective(view, w, affils[w], unified=unified,
                                     weight=weights[w], cross=cross_maps[w], beta=cfg.beta)
            affils[w] = sweep_affiliations(
                view, w, affils[w], unified=unified, weight=weights[w],
                cross=cross_maps[w], beta=cfg.beta,
                pinned=frozenset(view.core(w) | view.shell(w)), grid=grid,
            )
            after = layer_objective(view, w, affils[w], unified=unified,
                                    weight=weights[w], cross=cross_maps[w], beta=cfg.beta)
            step["layers"][w] = {"objective_before": before, "objective_after": after}
        weights = consensus.update_weights(unified, affils, cross_maps, active)
        unified = consensus.update_unified(affils, weights, cross_maps, index,
                                           normalized=not cfg.unnormalized_consensus)
        prev_visited = {w: view.visited(w) for w in active}
        changed = [expansion.expand_core(view, w, affils[w]) for w in active]
        affils, unified, cross_maps = expansion.adjust_state(
            view, net, seed.layer, active, affils, unified, cross_maps, prev_visited)
        index = expansion.unified_index(view, seed.layer, cross_maps)
        for w in active:
            step["layers"][w]["core_size"] = len(view.core(w))
        trace.append(step)
        if not any(changed):
            converged = True
            break

    communities, blends = expansion.finalize_communities(
        view, net, seed.layer, seed.node, active, affils, weights, unified, cross_maps)
    return DetectionResult(
        communities=communities,
        affiliations=affils,
        weights=weights,
        unified=unified,
        blends=blends,
        iterations=iterations,
        converged=converged,
        access_counts=view.access_counts(),
        excluded_layers=excluded,
        trace=trace,
    )
