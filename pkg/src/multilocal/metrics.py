"""Recall / precision / fscore and the per-seed, per-layer averaging protocol."""
from __future__ import annotations

from dataclasses import dataclass

from .model import NodeRef


@dataclass(frozen=True)
class Scores:
    recall: float
    precision: float
    fscore: float

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.recall, self.precision, self.fscore)


class GroundTruth:
    """Planted community labels, one label per node per layer.

    Labels are aligned across layers: the truth community of a seed in any
    layer is that layer's set of nodes sharing the seed's label.
    """

    def __init__(self, labels):
        self._labels = tuple(dict(layer) for layer in labels)

    @property
    def layer_count(self) -> int:
        return len(self._labels)

    def label(self, layer: int, node: int) -> int:
        try:
            return self._labels[layer][node]
        except KeyError:
            raise KeyError(f"no ground-truth label for node {node} in layer {layer}") from None

    def labels(self, layer: int) -> dict[int, int]:
        return dict(self._labels[layer])

    def community(self, layer: int, label) -> set[int]:
        return {i for i, lab in self._labels[layer].items() if lab == label}

    def seed_truth(self, seed: NodeRef, layer: int) -> set[int]:
        """Label-mates of the seed in the requested layer."""
        return self.community(layer, self.label(seed.layer, seed.node))

    def missing_nodes(self, layer: int, nodes) -> list[int]:
        labels = self._labels[layer]
        return sorted(i for i in nodes if i not in labels)


def prf(found: set[int], truth: set[int]) -> Scores:
    """Recall, precision, fscore of a detected community against its truth."""
    if not truth:
        raise ValueError("undefined ground truth: empty truth community")
    hit = len(found & truth)
    recall = hit / len(truth)
    precision = hit / len(found) if found else 0.0
    fscore = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return Scores(recall, precision, fscore)


def aggregate(per_seed: list[list[Scores]]) -> Scores:
    """Unweighted mean over layers per seed, then over seeds."""
    if not per_seed:
        raise ValueError("nothing to aggregate")
    seed_means = []
    for rows in per_seed:
        if not rows:
            raise ValueError("a seed with no evaluated layers cannot be aggregated")
        n = len(rows)
        seed_means.append((
            sum(s.recall for s in rows) / n,
            sum(s.precision for s in rows) / n,
            sum(s.fscore for s in rows) / n,
        ))
    k = len(seed_means)
    return Scores(
        sum(t[0] for t in seed_means) / k,
        sum(t[1] for t in seed_means) / k,
        sum(t[2] for t in seed_means) / k,
    )
