"""Planted-partition generators for multi-view and multi-domain benchmarks."""
from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from .metrics import GroundTruth
from .model import MULTI_DOMAIN, MULTI_VIEW, KINDS, LayerGraph, MultiNetwork

EQUAL = "equal"
POWER_LAW = "power_law"
SIZE_MODES = (EQUAL, POWER_LAW)

#: truncation range exponent for power-law community sizes
_POWER_EXPONENT = 2.0
_MIN_COMMUNITY = 5


@dataclass(frozen=True)
class GenSpec:
    """Parameters of one synthetic benchmark instance."""

    kind: str
    layers: int
    nodes: int
    communities: int
    p_in: float
    p_out: float
    size_mode: str = EQUAL
    p_cross_in: float = 0.0
    p_cross_out: float = 0.0
    rng_seed: int = 0

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown network kind: {self.kind!r}")
        if self.layers < 1:
            raise ValueError("need at least one layer")
        if self.nodes < 1 or self.communities < 1 or self.communities > self.nodes:
            raise ValueError("invalid node/community counts")
        if not (0.0 <= self.p_out < self.p_in <= 1.0):
            raise ValueError("probabilities must satisfy 0 <= p_out < p_in <= 1")
        if self.size_mode not in SIZE_MODES:
            raise ValueError(f"unknown size mode: {self.size_mode!r}")
        if self.size_mode == EQUAL and self.nodes % self.communities:
            raise ValueError("equal mode needs the community count to divide the node count")
        if self.kind == MULTI_DOMAIN:
            if not (0.0 <= self.p_cross_out <= self.p_cross_in <= 1.0):
                raise ValueError("cross probabilities must satisfy 0 <= p_cross_out <= p_cross_in <= 1")
        elif self.p_cross_in or self.p_cross_out:
            raise ValueError("cross probabilities only apply to multi_domain networks")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "GenSpec":
        return cls(**data)


def community_sizes(spec: GenSpec, rng: np.random.Generator) -> list[int]:
    """Community sizes: all equal, or heavy-tailed draws rescaled to sum to n."""
    n, k = spec.nodes, spec.communities
    if spec.size_mode == EQUAL:
        return [n // k] * k
    lo = float(min(_MIN_COMMUNITY, n // k))
    hi = float(max(lo + 1.0, n / 2))
    # inverse-CDF sample of a truncated continuous power law with exponent 2
    u = rng.random(k)
    draws = lo / (1.0 - u * (1.0 - lo / hi))
    scaled = draws / draws.sum() * n
    sizes = np.maximum(np.floor(scaled).astype(int), 2)
    # push the rounding drift onto the largest communities
    order = np.argsort(-scaled)
    idx = 0
    while sizes.sum() < n:
        sizes[order[idx % k]] += 1
        idx += 1
    idx = 0
    while sizes.sum() > n:
        j = order[idx % k]
        if sizes[j] > 2:
            sizes[j] -= 1
        idx += 1
    return [int(s) for s in sizes]


def _block_labels(sizes: list[int]) -> np.ndarray:
    return np.repeat(np.arange(len(sizes)), sizes)


def _sample_layer_edges(labels: np.ndarray, p_in: float, p_out: float,
                        rng: np.random.Generator) -> list[tuple[int, int]]:
    n = len(labels)
    iu, ju = np.triu_indices(n, 1)
    prob = np.where(labels[iu] == labels[ju], p_in, p_out)
    mask = rng.random(len(iu)) < prob
    return list(zip(iu[mask].tolist(), ju[mask].tolist()))


def _sample_cross_edges(labels_a: np.ndarray, labels_b: np.ndarray, p_same: float,
                        p_diff: float, rng: np.random.Generator) -> list[tuple[int, int]]:
    na, nb = len(labels_a), len(labels_b)
    iu = np.repeat(np.arange(na), nb)
    ju = np.tile(np.arange(nb), na)
    prob = np.where(labels_a[iu] == labels_b[ju], p_same, p_diff)
    mask = rng.random(len(iu)) < prob
    return list(zip(iu[mask].tolist(), ju[mask].tolist()))


def generate(spec: GenSpec) -> tuple[MultiNetwork, GroundTruth]:
    """Sample a planted-partition instance with aligned labels across layers.

    Intra-layer edges are Bernoulli(p_in) inside a community and
    Bernoulli(p_out) across; multi-domain inter-layer edges are
    Bernoulli(p_cross_in) between equal labels and Bernoulli(p_cross_out)
    otherwise, all with weight 1. Fully deterministic given the rng seed.
    """
    spec.validate()
    rng = np.random.default_rng(spec.rng_seed)
    sizes = community_sizes(spec, rng)
    if spec.kind == MULTI_VIEW:
        labels = _block_labels(sizes)
        per_layer_labels = [labels] * spec.layers
    else:
        per_layer_labels = [_block_labels(sizes) for _ in range(spec.layers)]

    graphs = []
    for w in range(spec.layers):
        edges = _sample_layer_edges(per_layer_labels[w], spec.p_in, spec.p_out, rng)
        graphs.append(LayerGraph(spec.nodes, edges))

    inter = []
    if spec.kind == MULTI_DOMAIN:
        for a in range(spec.layers):
            for b in range(a + 1, spec.layers):
                for u, v in _sample_cross_edges(per_layer_labels[a], per_layer_labels[b],
                                                spec.p_cross_in, spec.p_cross_out, rng):
                    inter.append((a, u, b, v, 1.0))

    net = MultiNetwork(graphs, spec.kind, inter)
    truth = GroundTruth([
        {i: int(lab) for i, lab in enumerate(layer_labels)}
        for layer_labels in per_layer_labels
    ])
    return net, truth
