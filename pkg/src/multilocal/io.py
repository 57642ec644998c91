"""Dataset directory layout, TSV parsing, and result serialization.

A dataset directory holds one intra-layer edge file per layer
(``layer_<i>.tsv``: ``u<TAB>v[<TAB>weight]``), an optional inter-layer file
(``inter.tsv``: ``layer_a<TAB>u<TAB>layer_b<TAB>v<TAB>weight``), an optional
ground-truth file (``ground_truth.tsv``: ``layer<TAB>node<TAB>label``), and a
``manifest.json`` describing the whole thing.
"""
from __future__ import annotations

import json
from pathlib import Path

from .datagen import GenSpec
from .metrics import GroundTruth
from .model import MULTI_DOMAIN, MULTI_VIEW, KINDS, LayerGraph, MultiNetwork

SCHEMA_VERSION = 1

MANIFEST_NAME = "manifest.json"
INTER_NAME = "inter.tsv"
TRUTH_NAME = "ground_truth.tsv"


class DatasetFormatError(ValueError):
    """Raised with a file name and line number when parsing fails."""

    def __init__(self, path, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = str(path)
        self.line_no = line_no


def _rows(path: Path):
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            yield line_no, line.split("\t")


def load_layer_edges(path: Path, label_map: dict[str, int] | None = None):
    """Edges from one intra-layer TSV; weight defaults to 1 when omitted."""
    edges = []
    for line_no, parts in _rows(path):
        if len(parts) not in (2, 3):
            raise DatasetFormatError(path, line_no, "expected 'u<TAB>v[<TAB>weight]'")
        try:
            if label_map is not None:
                u, v = label_map[parts[0]], label_map[parts[1]]
            else:
                u, v = int(parts[0]), int(parts[1])
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except (ValueError, KeyError) as exc:
            raise DatasetFormatError(path, line_no, f"bad edge row: {exc}") from None
        edges.append((u, v, w))
    return edges


def load_inter_edges(path: Path):
    edges = []
    for line_no, parts in _rows(path):
        if len(parts) != 5:
            raise DatasetFormatError(path, line_no,
                                     "expected 'layer_a<TAB>u<TAB>layer_b<TAB>v<TAB>weight'")
        try:
            edges.append((int(parts[0]), int(parts[1]), int(parts[2]),
                          int(parts[3]), float(parts[4])))
        except ValueError as exc:
            raise DatasetFormatError(path, line_no, f"bad inter-layer row: {exc}") from None
    return edges


def load_ground_truth(path: Path, layer_count: int) -> GroundTruth:
    labels: list[dict[int, int]] = [{} for _ in range(layer_count)]
    for line_no, parts in _rows(path):
        if len(parts) != 3:
            raise DatasetFormatError(path, line_no, "expected 'layer<TAB>node<TAB>label'")
        try:
            layer, node, label = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError as exc:
            raise DatasetFormatError(path, line_no, f"bad ground-truth row: {exc}") from None
        if not (0 <= layer < layer_count):
            raise DatasetFormatError(path, line_no, f"layer out of range: {layer}")
        labels[layer][node] = label
    return GroundTruth(labels)


def write_dataset(path, net: MultiNetwork, truth: GroundTruth | None = None,
                  spec: GenSpec | None = None, extra: dict | None = None) -> Path:
    """Write a network (and optional truth/spec) as a dataset directory."""
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    layer_files = []
    for w, graph in enumerate(net.layers):
        name = f"layer_{w}.tsv"
        layer_files.append(name)
        with open(path / name, "w", encoding="utf-8") as fh:
            for u, v, weight in sorted(graph.edges()):
                fh.write(f"{u}\t{v}\t{weight:g}\n")
    inter_file = None
    if net.kind == MULTI_DOMAIN:
        inter_file = INTER_NAME
        rows = []
        for a in range(net.layer_count):
            for b in range(a + 1, net.layer_count):
                mat = net.inter_matrix(a, b)
                for i in sorted(mat.rows):
                    for j, w in sorted(mat.rows[i].items()):
                        rows.append((a, i, b, j, w))
        with open(path / inter_file, "w", encoding="utf-8") as fh:
            for a, i, b, j, w in rows:
                fh.write(f"{a}\t{i}\t{b}\t{j}\t{w:g}\n")
    truth_file = None
    if truth is not None:
        truth_file = TRUTH_NAME
        with open(path / truth_file, "w", encoding="utf-8") as fh:
            for layer in range(truth.layer_count):
                for node, label in sorted(truth.labels(layer).items()):
                    fh.write(f"{layer}\t{node}\t{label}\n")
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "kind": net.kind,
        "layers": net.layer_count,
        "node_counts": [g.node_count for g in net.layers],
        "layer_files": layer_files,
        "inter_file": inter_file,
        "ground_truth_file": truth_file,
        "genspec": spec.to_dict() if spec is not None else None,
    }
    if extra:
        manifest.update(extra)
    with open(path / MANIFEST_NAME, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def load_dataset(path) -> tuple[MultiNetwork, GroundTruth | None, dict]:
    """Load a dataset directory back into memory.

    Without a manifest the layout is inferred: every ``layer_*.tsv`` becomes
    a layer and the presence of ``inter.tsv`` selects the multi-domain kind.
    """
    path = Path(path)
    manifest_path = path / MANIFEST_NAME
    if manifest_path.exists():
        with open(manifest_path, encoding="utf-8") as fh:
            manifest = json.load(fh)
        kind = manifest["kind"]
        if kind not in KINDS:
            raise ValueError(f"manifest declares unknown kind: {kind!r}")
        layer_files = manifest["layer_files"]
        node_counts = manifest["node_counts"]
        inter_file = manifest.get("inter_file")
        truth_file = manifest.get("ground_truth_file")
    else:
        layer_files = sorted(p.name for p in path.glob("layer_*.tsv"))
        if not layer_files:
            raise FileNotFoundError(f"no layer files in {path}")
        inter_file = INTER_NAME if (path / INTER_NAME).exists() else None
        truth_file = TRUTH_NAME if (path / TRUTH_NAME).exists() else None
        kind = MULTI_DOMAIN if inter_file else MULTI_VIEW
        node_counts = None
        manifest = {"schema_version": SCHEMA_VERSION, "kind": kind,
                    "layers": len(layer_files), "layer_files": layer_files,
                    "inter_file": inter_file, "ground_truth_file": truth_file}

    edge_lists = [load_layer_edges(path / name) for name in layer_files]
    if node_counts is None:
        peak = 0
        for edges in edge_lists:
            for u, v, _ in edges:
                peak = max(peak, u + 1, v + 1)
        node_counts = [peak] * len(edge_lists)
        manifest["node_counts"] = node_counts
    graphs = [LayerGraph(node_counts[w], edge_lists[w]) for w in range(len(edge_lists))]

    inter_edges = []
    if kind == MULTI_DOMAIN:
        if inter_file is None or not (path / inter_file).exists():
            raise FileNotFoundError("inter-layer edges required for a multi_domain dataset")
        inter_edges = load_inter_edges(path / inter_file)
    net = MultiNetwork(graphs, kind, inter_edges)

    truth = None
    if truth_file and (path / truth_file).exists():
        truth = load_ground_truth(path / truth_file, net.layer_count)
    return net, truth, manifest


def save_json(path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
