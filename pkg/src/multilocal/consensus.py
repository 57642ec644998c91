"""Cross-layer consensus: local inter-layer maps, layer weights, unified vector.

The unified affiliation lives in the seed layer's node space. Every other
layer is tied to it through the strongest inter-layer map P: the entrywise
max, over simple layer paths, of the products of locally extracted
inter-layer matrices. Layer weights come from a closed form that trusts a
layer more the better its mapped affiliation matches the unified one.
"""
from __future__ import annotations

import math

from .model import MULTI_VIEW, LocalView, MultiNetwork
from .objective import consensus_residual

#: floor inside the sqrt of the weight update; keeps perfect fits finite
EPS_WEIGHT = 1e-6

SparseRows = dict[int, dict[int, float]]


def identity_rows(nodes) -> SparseRows:
    return {i: {i: 1.0} for i in sorted(nodes)}


def extract_local_inter(net: MultiNetwork, view: LocalView, source: int, target: int) -> SparseRows:
    """Restriction of S^(source->target) to rows of nodes related to visited sets.

    Reads only rows of visited nodes: the visited set of ``source`` directly,
    plus (via the stored transpose) rows of ``target``'s visited nodes, which
    contribute the entries whose target endpoint is visited. No other part of
    S is touched.
    """
    rows: SparseRows = {}
    mat = net.inter_matrix(source, target)
    for i in sorted(view.visited(source)):
        row = mat.row(i)
        if row:
            rows[i] = dict(row)
    back = net.inter_matrix(target, source)
    for j in sorted(view.visited(target)):
        for i, w in back.row(j).items():
            rows.setdefault(i, {})[j] = w
    return rows


def sparse_matmul(a: SparseRows, b: SparseRows) -> SparseRows:
    """Sparse row-dict matrix product; accumulates in ascending inner index."""
    out: SparseRows = {}
    for i in sorted(a):
        row = a[i]
        acc: dict[int, float] = {}
        for j in sorted(row):
            brow = b.get(j)
            if not brow:
                continue
            s = row[j]
            for k in sorted(brow):
                acc[k] = acc.get(k, 0.0) + s * brow[k]
        acc = {k: v for k, v in acc.items() if v != 0.0}
        if acc:
            out[i] = acc
    return out


def _merge_max(dst: SparseRows, src: SparseRows) -> None:
    for i, row in src.items():
        drow = dst.setdefault(i, {})
        for j, v in row.items():
            if v > drow.get(j, 0.0):
                drow[j] = v


def strongest_paths(local_mats: dict[tuple[int, int], SparseRows], seed_layer: int,
                    layer_count: int, seed_nodes) -> dict[int, SparseRows]:
    """Strongest inter-layer map from the seed layer to every layer.

    Enumerates simple paths over the layer meta-graph (an edge exists where a
    local inter-layer matrix is nonempty), multiplies the matrices along each
    path, and keeps the entrywise max across paths. Weights never exceed 1,
    so revisiting a layer cannot beat a simple path; the seed layer maps to
    itself by the identity. Unreachable layers come back empty.
    """
    adjacency: dict[int, list[int]] = {}
    for (a, b), rows in local_mats.items():
        if rows:
            adjacency.setdefault(a, []).append(b)
    for a in adjacency:
        adjacency[a].sort()

    best: dict[int, SparseRows] = {w: {} for w in range(layer_count)}
    best[seed_layer] = identity_rows(seed_nodes)

    def walk(layer: int, rows: SparseRows, used: frozenset[int]) -> None:
        for nxt in adjacency.get(layer, ()):
            if nxt in used:
                continue
            prod = local_mats[(layer, nxt)] if rows is None else sparse_matmul(rows, local_mats[(layer, nxt)])
            if not prod:
                continue
            _merge_max(best[nxt], prod)
            walk(nxt, prod, used | {nxt})

    walk(seed_layer, None, frozenset({seed_layer}))
    return best


def residual(unified: dict[int, float], affil: dict[int, float], cross: SparseRows) -> float:
    """Squared distance between the unified vector and the mapped layer vector."""
    return consensus_residual(affil, unified, cross)


def update_weights(unified: dict[int, float], affils: dict[int, dict[int, float]],
                   cross_maps: dict[int, SparseRows], layers) -> dict[int, float]:
    """Closed-form layer weights 1 / (2 sqrt(max(d_w, eps)))."""
    out = {}
    for w in sorted(layers):
        d = residual(unified, affils[w], cross_maps[w])
        out[w] = 1.0 / (2.0 * math.sqrt(max(d, EPS_WEIGHT)))
    return out


def update_unified(affils: dict[int, dict[int, float]], weights: dict[int, float],
                   cross_maps: dict[int, SparseRows], index, *,
                   normalized: bool = True, clamp: bool = True) -> dict[int, float]:
    """Weighted combination of the mapped layer affiliations.

    With ``normalized`` (the default) this is the stationary point of the
    weighted consensus residual: sum_w d_w * (P z)_i / sum_w d_w. Without it
    the division is skipped, matching the raw printed update, which can push
    entries past 1. Values are clamped to [0, 1] unless ``clamp`` is False.
    """
    total_weight = sum(weights[w] for w in weights)
    if total_weight <= 0.0:
        raise ValueError("degenerate weights: all layer weights vanish")
    out = {}
    for i in sorted(index):
        acc = 0.0
        for w in sorted(weights):
            row = cross_maps[w].get(i)
            if not row:
                continue
            affil = affils[w]
            mapped = 0.0
            for j in sorted(row):
                mapped += row[j] * affil[j]
            acc += weights[w] * mapped
        u = acc / total_weight if normalized else acc
        if clamp:
            u = min(1.0, max(0.0, u))
        out[i] = u
    return out


def map_unified_to_layer(unified: dict[int, float], cross: SparseRows) -> dict[int, float]:
    """Project the unified vector into a layer's node space.

    Each layer node j gets the weight-normalized average of the unified
    values whose map row touches j; nodes with an empty column get 0. For an
    identity map this returns the unified vector itself.
    """
    num: dict[int, float] = {}
    den: dict[int, float] = {}
    for i in sorted(cross):
        if i not in unified:
            raise ValueError("dimension mismatch: map row outside the unified index")
        u = unified[i]
        row = cross[i]
        for j in sorted(row):
            p = row[j]
            num[j] = num.get(j, 0.0) + p * u
            den[j] = den.get(j, 0.0) + p
    return {j: (num[j] / den[j] if den[j] > 0.0 else 0.0) for j in num}
