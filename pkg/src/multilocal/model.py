"""Data model for multiple networks and the locality-enforcing access layer.

A :class:`MultiNetwork` bundles one weighted undirected graph per layer plus
sparse inter-layer edges. All detection state that must respect locality goes
through a :class:`LocalView`, which tracks the core/boundary/shell frontier
per layer and counts how many distinct nodes had their adjacency queried.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

logger = logging.getLogger(__name__)

MULTI_VIEW = "multi_view"
MULTI_DOMAIN = "multi_domain"
KINDS = (MULTI_VIEW, MULTI_DOMAIN)


@dataclass(frozen=True)
class NodeRef:
    """A node addressed by (layer index, node id local to that layer)."""

    layer: int
    node: int


class LayerGraph:
    """Weighted undirected graph over dense integer node ids.

    The adjacency is symmetric and self-loop free; edge weights are positive
    and default to 1.0. Instances are immutable once built.
    """

    __slots__ = ("node_count", "_adj")

    def __init__(self, node_count: int, edges=()):
        if node_count < 0:
            raise ValueError("node_count must be nonnegative")
        self.node_count = node_count
        adj: list[dict[int, float]] = [{} for _ in range(node_count)]
        dropped = 0
        for edge in edges:
            if len(edge) == 2:
                u, v = edge
                w = 1.0
            else:
                u, v, w = edge
                w = 1.0 if w is None else float(w)
            u, v = int(u), int(v)
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise ValueError(f"edge ({u}, {v}) out of range for {node_count} nodes")
            if u == v:
                dropped += 1
                continue
            if w <= 0:
                raise ValueError(f"edge ({u}, {v}) has non-positive weight {w}")
            prev = adj[u].get(v)
            if prev is not None and prev != w:
                raise ValueError(f"conflicting weights for edge ({u}, {v}): {prev} vs {w}")
            adj[u][v] = w
            adj[v][u] = w
        if dropped:
            logger.warning("dropped %d self-loop(s) at ingestion", dropped)
        # freeze as sorted tuples for deterministic iteration
        self._adj = tuple(tuple(sorted(d.items())) for d in adj)

    def neighbors(self, node: int) -> list[tuple[int, float]]:
        """Adjacency list of ``node`` as (neighbor, weight) pairs."""
        if not (0 <= node < self.node_count):
            raise ValueError(f"node out of range: {node}")
        return list(self._adj[node])

    def degree(self, node: int) -> int:
        if not (0 <= node < self.node_count):
            raise ValueError(f"node out of range: {node}")
        return len(self._adj[node])

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self._adj) // 2

    def edges(self):
        """All edges as (u, v, weight) with u < v, sorted."""
        for u in range(self.node_count):
            for v, w in self._adj[u]:
                if u < v:
                    yield u, v, w


class InterLayerEdges:
    """Sparse inter-layer edge matrix between a source and a target layer.

    Entries live in [0, 1] after ingestion. A virtual identity variant backs
    multi-view networks without materializing anything.
    """

    __slots__ = ("source", "target", "rows", "is_identity", "_size")

    def __init__(self, source: int, target: int, rows=None, *, identity_size=None):
        self.source = source
        self.target = target
        self.is_identity = identity_size is not None
        self._size = identity_size
        self.rows: dict[int, dict[int, float]] = {} if rows is None else rows

    @classmethod
    def identity(cls, source: int, target: int, size: int) -> "InterLayerEdges":
        return cls(source, target, identity_size=size)

    def row(self, i: int) -> dict[int, float]:
        """All nonzero entries (j -> weight) for a fixed source node ``i``."""
        if self.is_identity:
            if not (0 <= i < self._size):
                raise ValueError(f"node out of range: {i}")
            return {i: 1.0}
        if i < 0:
            raise ValueError(f"node out of range: {i}")
        return dict(self.rows.get(i, {}))

    def entry_count(self) -> int:
        return sum(len(r) for r in self.rows.values())


class MultiNetwork:
    """Immutable collection of layer graphs plus inter-layer edges.

    ``kind`` is ``multi_view`` (shared node set, identity coupling) or
    ``multi_domain`` (distinct node sets joined by explicit inter-layer
    edges). Instances are safe to share across concurrent detection runs.
    """

    __slots__ = ("layers", "kind", "_inter")

    def __init__(self, layers, kind: str, inter_edges=()):
        layers = tuple(layers)
        if not layers:
            raise ValueError("at least one layer required")
        if kind not in KINDS:
            raise ValueError(f"unknown network kind: {kind!r}")
        self.layers = layers
        self.kind = kind
        inter_edges = list(inter_edges)
        if kind == MULTI_VIEW:
            if inter_edges:
                raise ValueError("multi_view networks use an implicit identity coupling; "
                                 "explicit inter-layer edges are not allowed")
            counts = {g.node_count for g in layers}
            if len(counts) > 1:
                raise ValueError("multi_view layers must share one node set")
            self._inter = {}
            return
        m = len(layers)
        raw: dict[tuple[int, int], dict[int, dict[int, float]]] = {}
        max_w = 0.0
        for a, u, b, v, w in inter_edges:
            a, u, b, v, w = int(a), int(u), int(b), int(v), float(w)
            if a == b:
                raise ValueError("inter-layer edge must join two distinct layers")
            if not (0 <= a < m and 0 <= b < m):
                raise ValueError(f"layer out of range in inter-layer edge ({a}, {b})")
            if not (0 <= u < layers[a].node_count and 0 <= v < layers[b].node_count):
                raise ValueError(f"node out of range in inter-layer edge ({a}:{u}, {b}:{v})")
            if w < 0:
                raise ValueError("inter-layer weights must be nonnegative")
            if w == 0:
                continue
            max_w = max(max_w, w)
            raw.setdefault((a, b), {}).setdefault(u, {})[v] = w
            raw.setdefault((b, a), {}).setdefault(v, {})[u] = w
        if max_w > 1.0:
            # rescale so path products stay meaningful as strengths <= 1
            logger.warning("inter-layer weights exceed 1; dividing all by max %g", max_w)
            for rows in raw.values():
                for r in rows.values():
                    for j in r:
                        r[j] = r[j] / max_w
        self._inter = {
            key: InterLayerEdges(key[0], key[1], rows) for key, rows in raw.items()
        }

    @property
    def layer_count(self) -> int:
        return len(self.layers)

    def node_count(self, layer: int) -> int:
        return self.layers[layer].node_count

    def inter_matrix(self, source: int, target: int) -> InterLayerEdges:
        """Inter-layer matrix S for (source -> target); identity for multi_view."""
        m = len(self.layers)
        if not (0 <= source < m and 0 <= target < m):
            raise ValueError("layer out of range")
        if self.kind == MULTI_VIEW:
            return InterLayerEdges.identity(source, target, self.layers[source].node_count)
        mat = self._inter.get((source, target))
        if mat is None:
            return InterLayerEdges(source, target, {})
        return mat

    def has_inter(self, source: int, target: int) -> bool:
        return self.kind == MULTI_VIEW or (source, target) in self._inter


def neighbors(graph: LayerGraph, node: int) -> list[tuple[int, float]]:
    """Raw adjacency oracle for one layer graph."""
    return graph.neighbors(node)


def interlayer_row(matrix: InterLayerEdges, i: int) -> dict[int, float]:
    """All nonzero inter-layer weights out of source node ``i``."""
    return matrix.row(i)


class LocalView:
    """Per-run frontier bookkeeping: core C, boundary N, shell NN per layer.

    Only nodes in the core and boundary ever have their adjacency queried;
    the access counter records distinct queried nodes per layer, which is the
    quantity bounded by the locality guarantees. The view also accumulates
    the locally known intra-layer subgraph (every edge incident to a queried
    node), which is exactly what the affiliation objective may see.
    """

    def __init__(self, net: MultiNetwork):
        m = net.layer_count
        self.net = net
        self._core: list[set[int]] = [set() for _ in range(m)]
        self._boundary: list[set[int]] = [set() for _ in range(m)]
        self._shell: list[set[int]] = [set() for _ in range(m)]
        self._visited: list[set[int]] = [set() for _ in range(m)]
        self._queried: list[set[int]] = [set() for _ in range(m)]
        self._adj: list[dict[int, dict[int, float]]] = [{} for _ in range(m)]
        self._edges: list[list[tuple[int, int, float]]] = [[] for _ in range(m)]

    # -- frontier accessors -------------------------------------------------
    def core(self, layer: int) -> set[int]:
        return set(self._core[layer])

    def boundary(self, layer: int) -> set[int]:
        return set(self._boundary[layer])

    def shell(self, layer: int) -> set[int]:
        return set(self._shell[layer])

    def visited(self, layer: int) -> set[int]:
        return set(self._visited[layer])

    def access_count(self, layer: int) -> int:
        return len(self._queried[layer])

    def access_counts(self) -> dict[int, int]:
        return {w: len(q) for w, q in enumerate(self._queried)}

    def local_edges(self, layer: int) -> list[tuple[int, int, float]]:
        """Known intra-layer edges among visited nodes, one per unordered pair."""
        return list(self._edges[layer])

    def local_adjacency(self, layer: int) -> dict[int, list[tuple[int, float]]]:
        """Known incident edges per visited node, sorted by neighbor id."""
        out = {}
        for i in self._visited[layer]:
            known = self._adj[layer].get(i)
            out[i] = sorted(known.items()) if known else []
        return out

    # -- queries ------------------------------------------------------------
    def neighbors(self, layer: int, node: int) -> list[tuple[int, float]]:
        """Adjacency of ``node``, counted against the layer's access budget."""
        return list(self._query(layer, node))

    def _query(self, layer: int, node: int):
        queried = self._queried[layer]
        if node in queried:
            return self._adj[layer][node].items()
        raw = self.net.layers[layer].neighbors(node)
        queried.add(node)
        adj = self._adj[layer]
        mine = adj.setdefault(node, {})
        for j, w in raw:
            if j not in mine:
                mine[j] = w
                adj.setdefault(j, {})[node] = w
                self._edges[layer].append((node, j, w) if node < j else (j, node, w))
        return mine.items()

    # -- frontier maintenance -----------------------------------------------
    def set_core(self, layer: int, nodes) -> None:
        """Replace the core; it may only grow."""
        nodes = set(nodes)
        if not nodes >= self._core[layer]:
            raise ValueError("core sets grow monotonically")
        n = self.net.layers[layer].node_count
        for node in nodes:
            if not (0 <= node < n):
                raise ValueError(f"node out of range: {node}")
        self._core[layer] = nodes

    def rebuild_frontiers(self, layer: int) -> None:
        """Recompute N as neighbors(C) \\ C and NN as neighbors(C u N) beyond."""
        core = self._core[layer]
        nb: set[int] = set()
        for c in sorted(core):
            for j, _ in self._query(layer, c):
                if j not in core:
                    nb.add(j)
        sh: set[int] = set()
        for q in sorted(nb):
            for j, _ in self._query(layer, q):
                if j not in core and j not in nb:
                    sh.add(j)
        self._boundary[layer] = nb
        self._shell[layer] = sh
        self._visited[layer] = core | nb | sh


def init_frontiers(net: MultiNetwork, seeds_per_layer: dict[int, set[int]]) -> LocalView:
    """Build a LocalView with C = seeds and freshly derived N / NN per layer.

    Layers absent from ``seeds_per_layer`` stay empty (inactive). Each given
    seed set must be nonempty and within range of its layer.
    """
    view = LocalView(net)
    for layer, seeds in sorted(seeds_per_layer.items()):
        seeds = set(seeds)
        if not seeds:
            raise ValueError(f"empty seed set for layer {layer}")
        n = net.layers[layer].node_count
        for s in seeds:
            if not (0 <= s < n):
                raise ValueError(f"seed not in layer {layer}: {s}")
        view.set_core(layer, seeds)
        view.rebuild_frontiers(layer)
    return view
