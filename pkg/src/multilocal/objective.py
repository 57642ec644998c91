"""Affiliation quality objective and the per-layer grid-search update.

Each visited node carries an affiliation z in [0, 1]. The layer objective is
the boundary/interior edge-mass ratio plus an L2 regularizer plus a weighted
consensus residual against the unified affiliation. Affiliations are updated
one coordinate at a time by exhaustive search over a uniform grid, so every
accepted move is a certified non-increase of the objective.
"""
from __future__ import annotations

from .model import LocalView

#: guards the ratio denominator; an edge-free view yields ratio 0 by convention
EPS_DENOM = 1e-12

DEFAULT_GRID_SIZE = 21


def affiliation_grid(size: int = DEFAULT_GRID_SIZE) -> tuple[float, ...]:
    """Uniform candidate values in [0, 1]; 21 points by default."""
    if size < 2:
        raise ValueError("grid needs at least two points")
    return tuple(k / (size - 1) for k in range(size))


def edge_terms(z_i: float, z_j: float, weight: float) -> tuple[float, float]:
    """Boundary and interior mass contributed by one edge.

    The boundary term is weight * |z_i - z_j|; the interior term is
    weight * ((1 - |z_i - z_j|) + (max(z_i, z_j) - 1)), which algebraically
    equals weight * min(z_i, z_j).
    """
    gap = abs(z_i - z_j)
    return weight * gap, weight * ((1.0 - gap) + (max(z_i, z_j) - 1.0))


def quality_ratio(edges, affil: dict[int, float]) -> float:
    """Boundary mass over interior mass for the given unordered edge list."""
    ext = 0.0
    inner = 0.0
    for i, j, w in edges:
        e, n = edge_terms(affil[i], affil[j], w)
        ext += e
        inner += n
    return ext / (inner + EPS_DENOM)


def layer_quality_ratio(view: LocalView, layer: int, affil: dict[int, float]) -> float:
    """Quality ratio over the locally known edges of one layer."""
    return quality_ratio(view.local_edges(layer), affil)


def regularizer(affil: dict[int, float]) -> float:
    return sum(v * v for v in affil.values())


def consensus_residual(affil: dict[int, float], unified: dict[int, float],
                       cross: dict[int, dict[int, float]]) -> float:
    """Squared residual ||U - P z||^2 over the unified index.

    ``cross`` holds sparse rows of the layer map P (unified node -> layer
    nodes). Unified nodes without a row contribute their full u_i^2.
    """
    for i in cross:
        if i not in unified:
            raise ValueError("dimension mismatch: map row outside the unified index")
    total = 0.0
    for i in sorted(unified):
        mapped = 0.0
        row = cross.get(i)
        if row:
            for j in sorted(row):
                if j not in affil:
                    raise ValueError("dimension mismatch: map column outside the affiliation vector")
                mapped += row[j] * affil[j]
        d = unified[i] - mapped
        total += d * d
    return total


def layer_objective(view: LocalView, layer: int, affil: dict[int, float], *,
                    unified: dict[int, float] | None = None,
                    weight: float = 0.0,
                    cross: dict[int, dict[int, float]] | None = None,
                    beta: float = 0.0) -> float:
    """Ratio + beta * ||z||^2 + weight * ||U - P z||^2 for one layer."""
    total = layer_quality_ratio(view, layer, affil) + beta * regularizer(affil)
    if weight and cross is not None and unified is not None:
        total += weight * consensus_residual(affil, unified, cross)
    return total


def sweep_affiliations(view: LocalView, layer: int, affil: dict[int, float], *,
                       unified: dict[int, float] | None = None,
                       weight: float = 0.0,
                       cross: dict[int, dict[int, float]] | None = None,
                       beta: float = 0.0,
                       pinned=frozenset(),
                       grid: tuple[float, ...] | None = None) -> dict[int, float]:
    """One coordinate pass over the layer's non-pinned visited nodes.

    Nodes are processed in ascending id order; each is set to the grid value
    minimizing the layer objective with every other coordinate fixed. Ties go
    to the smaller grid value. The incumbent value is always among the
    candidates, so a full pass never increases the objective.

    Only the terms touched by the updated coordinate are re-evaluated: its
    incident known edges, its own regularizer entry, and the consensus rows
    whose map column includes it.
    """
    if grid is None:
        grid = affiliation_grid()
    visited = view.visited(layer)
    if set(affil) != visited:
        raise ValueError("affiliation vector must cover exactly the visited nodes")
    z = dict(affil)
    adjacency = view.local_adjacency(layer)

    ext_total = 0.0
    int_total = 0.0
    for i, j, w in view.local_edges(layer):
        e, n = edge_terms(z[i], z[j], w)
        ext_total += e
        int_total += n
    reg_total = regularizer(z)

    use_cons = bool(weight) and cross is not None and unified is not None
    if use_cons:
        for i in cross:
            if i not in unified:
                raise ValueError("dimension mismatch: map row outside the unified index")
        mapped = {i: 0.0 for i in unified}
        columns: dict[int, list[tuple[int, float]]] = {}
        for i in sorted(cross):
            row = cross[i]
            acc = 0.0
            for j in sorted(row):
                if j not in z:
                    raise ValueError("dimension mismatch: map column outside the affiliation vector")
                columns.setdefault(j, []).append((i, row[j]))
                acc += row[j] * z[j]
            mapped[i] = acc
        cons_total = 0.0
        for i in sorted(unified):
            d = unified[i] - mapped[i]
            cons_total += d * d

    for node in sorted(visited):
        if node in pinned:
            continue
        incumbent = z[node]
        incident = adjacency.get(node, [])
        ext_old = 0.0
        int_old = 0.0
        for j, w in incident:
            e, n = edge_terms(incumbent, z[j], w)
            ext_old += e
            int_old += n
        ext_base = ext_total - ext_old
        int_base = int_total - int_old
        reg_base = reg_total - incumbent * incumbent
        if use_cons:
            affected = columns.get(node, [])
            cons_base = cons_total
            for r, _ in affected:
                d = unified[r] - mapped[r]
                cons_base -= d * d

        best_value = None
        best_obj = None
        best_ext = best_int = 0.0
        for v in grid:
            ext_v = 0.0
            int_v = 0.0
            for j, w in incident:
                e, n = edge_terms(v, z[j], w)
                ext_v += e
                int_v += n
            obj = (ext_base + ext_v) / (int_base + int_v + EPS_DENOM)
            obj += beta * (reg_base + v * v)
            if use_cons:
                cons_v = cons_base
                for r, p in affected:
                    d = unified[r] - (mapped[r] + p * (v - incumbent))
                    cons_v += d * d
                obj += weight * cons_v
            if best_obj is None or obj < best_obj:
                best_obj = obj
                best_value = v
                best_ext, best_int = ext_v, int_v
        if best_value != incumbent:
            ext_total = ext_base + best_ext
            int_total = int_base + best_int
            reg_total = reg_base + best_value * best_value
            if use_cons:
                cons_total = cons_base
                for r, p in affected:
                    mapped[r] += p * (best_value - incumbent)
                    d = unified[r] - mapped[r]
                    cons_total += d * d
            z[node] = best_value
    return z
