"""Core growth from affiliations and final community extraction."""
from __future__ import annotations

from .model import MULTI_VIEW, LocalView, MultiNetwork
from . import consensus


def expansion_threshold(view: LocalView, layer: int, affil: dict[int, float]) -> float:
    """Mean affiliation over core plus boundary; the strict growth threshold."""
    pool = view.core(layer) | view.boundary(layer)
    if not pool:
        raise ValueError("cannot take the expansion threshold of an empty frontier")
    return sum(affil[i] for i in pool) / len(pool)


def expand_core(view: LocalView, layer: int, affil: dict[int, float]) -> bool:
    """Promote boundary nodes strictly above the threshold into the core.

    Promoted nodes are pinned at affiliation 1. The boundary and shell are
    rebuilt afterwards; returns whether the core changed.
    """
    threshold = expansion_threshold(view, layer, affil)
    promoted = {i for i in view.boundary(layer) if affil[i] > threshold}
    if not promoted:
        return False
    view.set_core(layer, view.core(layer) | promoted)
    for i in promoted:
        affil[i] = 1.0
    view.rebuild_frontiers(layer)
    return True


def build_cross_maps(net: MultiNetwork, view: LocalView, seed_layer: int,
                     layers) -> dict[int, consensus.SparseRows]:
    """Strongest maps from the seed layer to each active layer.

    Multi-view networks short-circuit to identities on the visited sets
    without touching any inter-layer storage. Map columns are restricted to
    each layer's visited nodes: unvisited nodes carry affiliation 0, so the
    dropped entries contribute nothing to the mapped vector anyway.
    """
    layers = sorted(layers)
    if net.kind == MULTI_VIEW:
        return {w: consensus.identity_rows(view.visited(w)) for w in layers}
    local_mats = {}
    for a in layers:
        for b in layers:
            if a != b:
                local_mats[(a, b)] = consensus.extract_local_inter(net, view, a, b)
    maps = consensus.strongest_paths(local_mats, seed_layer, net.layer_count,
                                     view.visited(seed_layer))
    out = {}
    for w in layers:
        visited = view.visited(w)
        rows = {}
        for i, row in maps[w].items():
            kept = {j: v for j, v in row.items() if j in visited}
            if kept:
                rows[i] = kept
        out[w] = rows
    return out


def unified_index(view: LocalView, seed_layer: int,
                  cross_maps: dict[int, consensus.SparseRows]) -> set[int]:
    """Seed-layer visited nodes plus every node reachable through map rows."""
    index = view.visited(seed_layer)
    for rows in cross_maps.values():
        index |= set(rows)
    return index


def adjust_state(view: LocalView, net: MultiNetwork, seed_layer: int, layers,
                 affils: dict[int, dict[int, float]], unified: dict[int, float],
                 cross_maps: dict[int, consensus.SparseRows],
                 prev_visited: dict[int, set[int]]):
    """Resize run state after an expansion step.

    Newly visited boundary nodes start at affiliation 0.5 and shell nodes at
    0, matching the initialization rule. The cross-layer maps are recomputed
    from the grown visited sets (still reading only visited rows), and the
    unified vector gains entries initialized to its current mean. Without
    growth everything is returned untouched.
    """
    grew = False
    for w in sorted(layers):
        boundary = view.boundary(w)
        for i in sorted(view.visited(w) - prev_visited[w]):
            grew = True
            affils[w][i] = 0.5 if i in boundary else 0.0
    if not grew:
        return affils, unified, cross_maps
    cross_maps = build_cross_maps(net, view, seed_layer, layers)
    index = unified_index(view, seed_layer, cross_maps)
    fresh = index - set(unified)
    if fresh:
        fill = sum(unified.values()) / len(unified) if unified else 0.5
        for i in fresh:
            unified[i] = fill
    return affils, unified, cross_maps


def blend_vector(view: LocalView, layer: int, affil: dict[int, float],
                 weight_share: float, projected: dict[int, float]) -> dict[int, float]:
    """Per-node mix of the layer affiliation and the projected unified vector."""
    return {
        i: weight_share * affil[i] + (1.0 - weight_share) * projected.get(i, 0.0)
        for i in sorted(view.visited(layer))
    }


def finalize_communities(view: LocalView, net: MultiNetwork, seed_layer: int, seed_node: int,
                         layers, affils: dict[int, dict[int, float]],
                         weights: dict[int, float], unified: dict[int, float],
                         cross_maps: dict[int, consensus.SparseRows]):
    """Blend-threshold each layer's visited nodes into its final community.

    The blend coefficient is the layer weight normalized by the largest layer
    weight, keeping the mix convex. A node joins the community when its blend
    value strictly exceeds the layer mean of the blend vector, taken over the
    whole layer (unvisited nodes contribute 0). The seed is always part of
    its own layer's community.
    """
    max_weight = max(weights[w] for w in weights) if weights else 1.0
    communities: dict[int, set[int]] = {w: set() for w in range(net.layer_count)}
    blends: dict[int, dict[int, float]] = {}
    for w in sorted(layers):
        share = weights[w] / max_weight if max_weight > 0 else 1.0
        projected = consensus.map_unified_to_layer(unified, cross_maps[w])
        blend = blend_vector(view, w, affils[w], share, projected)
        blends[w] = blend
        mean = sum(blend.values()) / net.node_count(w)
        communities[w] = {i for i, b in blend.items() if b > mean}
    communities[seed_layer].add(seed_node)
    return communities, blends
