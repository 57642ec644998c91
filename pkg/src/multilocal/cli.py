"""Command-line surface: gen, detect, eval, sweep."""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .datagen import GenSpec, generate
from .driver import DetectConfig, detect
from .harness import default_seed_nodes, evaluate, sample_seed_nodes
from .io import (DatasetFormatError, load_dataset, load_json, save_json,
                 write_dataset, SCHEMA_VERSION)
from .model import NodeRef

DEFAULT_T_GRID = "1,3,5,7,9,11,13,15,17,19"
DEFAULT_BETA_GRID = "1e-7,1e-6,1e-5,1e-4,1e-3,1e-2,1e-1,0.5"


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--beta", type=float, default=1e-4,
                        help="affiliation regularizer (default 1e-4)")
    parser.add_argument("--t", type=int, default=11, dest="top_t",
                        help="inter-layer images seeding each non-seed layer (default 11)")
    parser.add_argument("--max-iter", type=int, default=20,
                        help="iteration cap of the detection loop (default 20)")
    parser.add_argument("--literal-eq19", action="store_true",
                        help="use the raw, unnormalized consensus update variant")
    parser.add_argument("--grid-size", type=int, default=21,
                        help="number of affiliation grid points (default 21)")


def _config_from_args(args) -> DetectConfig:
    return DetectConfig(beta=args.beta, top_t=args.top_t, max_iter=args.max_iter,
                        unnormalized_consensus=args.literal_eq19,
                        grid_size=args.grid_size)


def _config_echo(cfg: DetectConfig) -> dict:
    return {
        "beta": cfg.beta,
        "t": cfg.top_t,
        "max_iter": cfg.max_iter,
        "literal_eq19": cfg.unnormalized_consensus,
        "grid_size": cfg.grid_size,
    }


def _parse_seed(text: str) -> NodeRef:
    try:
        layer, node = text.split(":")
        return NodeRef(int(layer), int(node))
    except ValueError:
        raise SystemExit(f"bad --seed {text!r}: expected 'layer:node'")


def cmd_gen(args) -> int:
    spec = GenSpec.from_dict(load_json(args.spec))
    net, truth = generate(spec)
    out = write_dataset(args.out, net, truth, spec)
    print(f"wrote {net.kind} dataset with {net.layer_count} layer(s) to {out}")
    return 0


def cmd_detect(args) -> int:
    net, _, manifest = load_dataset(args.data)
    cfg = _config_from_args(args)
    seed = _parse_seed(args.seed)
    start = time.perf_counter()
    result = detect(net, seed, cfg)
    elapsed = time.perf_counter() - start
    payload = {
        "schema_version": SCHEMA_VERSION,
        "dataset": str(Path(args.data)),
        "kind": manifest["kind"],
        "config": _config_echo(cfg),
        "seed": {"layer": seed.layer, "node": seed.node},
        "communities": {str(w): sorted(c) for w, c in result.communities.items()},
        "affiliations": {str(w): {str(i): z for i, z in sorted(a.items())}
                         for w, a in result.affiliations.items()},
        "weights": {str(w): v for w, v in sorted(result.weights.items())},
        "unified": {str(i): u for i, u in sorted(result.unified.items())},
        "iterations": result.iterations,
        "converged": result.converged,
        "access_counts": {str(w): c for w, c in sorted(result.access_counts.items())},
        "excluded_layers": list(result.excluded_layers),
        "wall_clock_s": elapsed,
    }
    if args.out:
        save_json(args.out, payload)
        print(f"wrote {args.out}")
    else:
        for w in sorted(result.communities):
            print(f"layer {w}: {sorted(result.communities[w])}")
    return 0


def _run_eval(args, cfg: DetectConfig):
    net, truth, manifest = load_dataset(args.data)
    if truth is None:
        raise SystemExit(f"dataset {args.data} has no ground truth file")
    candidates = default_seed_nodes(net)
    if args.seeds is not None:
        seed_nodes = sample_seed_nodes(candidates, args.seeds, args.rng_seed)
    else:
        seed_nodes = candidates
    report = evaluate(net, truth, cfg, seed_nodes=seed_nodes, jobs=args.jobs)
    return net, manifest, seed_nodes, report


def cmd_eval(args) -> int:
    cfg = _config_from_args(args)
    start = time.perf_counter()
    _, manifest, seed_nodes, report = _run_eval(args, cfg)
    elapsed = time.perf_counter() - start
    print(f"{'seed':>6}  {'recall':>8}  {'precision':>9}  {'fscore':>8}")
    for row in report.seeds:
        print(f"{row.seed.node:>6}  {row.mean.recall:8.4f}  "
              f"{row.mean.precision:9.4f}  {row.mean.fscore:8.4f}")
    o = report.overall
    print(f"{'all':>6}  {o.recall:8.4f}  {o.precision:9.4f}  {o.fscore:8.4f}")
    if args.out:
        payload = {
            "schema_version": SCHEMA_VERSION,
            "dataset": str(Path(args.data)),
            "kind": manifest["kind"],
            "config": _config_echo(cfg),
            "protocol": {"seed_layer": 0, "seeds": seed_nodes,
                         "rng_seed": args.rng_seed, "jobs": args.jobs},
            "per_seed": [
                {"seed": r.seed.node, "recall": r.mean.recall,
                 "precision": r.mean.precision, "fscore": r.mean.fscore}
                for r in report.seeds
            ],
            "aggregate": {"recall": o.recall, "precision": o.precision, "fscore": o.fscore},
            "wall_clock_s": elapsed,
        }
        save_json(args.out, payload)
        print(f"wrote {args.out}")
    return 0


def _parse_grid(text: str, param: str):
    try:
        if param == "t":
            values = [int(v) for v in text.split(",") if v.strip()]
            if any(v < 1 for v in values):
                raise ValueError("t values must be positive")
        else:
            values = [float(v) for v in text.split(",") if v.strip()]
            if any(v <= 0 for v in values):
                raise ValueError("beta values must be positive")
    except ValueError as exc:
        raise SystemExit(f"invalid grid: {exc}")
    if not values:
        raise SystemExit("invalid grid: empty")
    return values


def cmd_sweep(args) -> int:
    grid_text = args.grid or (DEFAULT_T_GRID if args.param == "t" else DEFAULT_BETA_GRID)
    values = _parse_grid(grid_text, args.param)
    rows = []
    for value in values:
        if args.param == "t":
            args.top_t = value
        else:
            args.beta = value
        cfg = _config_from_args(args)
        _, _, _, report = _run_eval(args, cfg)
        o = report.overall
        rows.append((value, o.recall, o.precision, o.fscore))
        print(f"{args.param}={value:g}  recall={o.recall:.4f}  "
              f"precision={o.precision:.4f}  fscore={o.fscore:.4f}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(f"{args.param}\trecall\tprecision\tfscore\n")
            for value, r, p, f in rows:
                fh.write(f"{value:g}\t{r:.6f}\t{p:.6f}\t{f:.6f}\n")
        print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multilocal",
        description="Local community detection across multiple networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="generate a synthetic dataset directory")
    p_gen.add_argument("--spec", required=True, help="JSON file with generator parameters")
    p_gen.add_argument("--out", required=True, help="output dataset directory")
    p_gen.set_defaults(func=cmd_gen)

    p_detect = sub.add_parser("detect", help="detect the community of one seed")
    p_detect.add_argument("--data", required=True, help="dataset directory")
    p_detect.add_argument("--seed", required=True, help="seed as 'layer:node'")
    p_detect.add_argument("--out", help="write the result JSON here")
    _add_config_flags(p_detect)
    p_detect.set_defaults(func=cmd_detect)

    p_eval = sub.add_parser("eval", help="run the seed protocol and report metrics")
    p_eval.add_argument("--data", required=True, help="dataset directory")
    p_eval.add_argument("--seeds", type=int, help="sample this many seed nodes")
    p_eval.add_argument("--rng-seed", type=int, default=0, help="sampling seed (default 0)")
    p_eval.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p_eval.add_argument("--out", help="write the report JSON here")
    _add_config_flags(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_sweep = sub.add_parser("sweep", help="evaluate over a parameter grid")
    p_sweep.add_argument("--data", required=True, help="dataset directory")
    p_sweep.add_argument("--param", required=True, choices=("t", "beta"))
    p_sweep.add_argument("--grid", help="comma-separated grid values")
    p_sweep.add_argument("--seeds", type=int, help="sample this many seed nodes")
    p_sweep.add_argument("--rng-seed", type=int, default=0, help="sampling seed (default 0)")
    p_sweep.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")
    p_sweep.add_argument("--out", help="write the sweep TSV here")
    _add_config_flags(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DatasetFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
