"""Batch command line: generate, cluster, evaluate, bench, plot.

Exit codes: 0 success, 2 usage error, 3 data error, 4 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import dataio, svgplot
from .bench import ALGOS, format_report, load_bench_config, run_bench
from .dataio import DataFormatError
from .engine import RunConfig, cluster_deterministic, cluster_stochastic
from .metrics import build_contingency, g_criterion, k_criterion
from .synth import ClassSpec, MixtureSpec, builtin_set, sample_mixture

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_INTERNAL = 4


def _spec_from_file(path) -> MixtureSpec:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        classes = tuple(
            ClassSpec(np.array(c["mean"]), np.array(c["cov"]), int(c["count"]))
            for c in doc["classes"]
        )
        return MixtureSpec(classes)
    except (KeyError, TypeError) as exc:
        raise DataFormatError(f"{path}: bad mixture spec: {exc}") from None


def cmd_generate(args) -> int:
    if args.set is not None:
        spec = builtin_set(args.set)
    else:
        spec = _spec_from_file(args.spec)
    ds = sample_mixture(spec, args.seed)
    dataio.write_dataset_csv(args.out, ds.data, ds.labels)
    print(f"wrote {len(ds)} points (d={ds.dim}) to {args.out}")
    return EXIT_OK


def _config_from_args(args, j: int) -> RunConfig:
    return RunConfig(
        h=args.h,
        th1=args.th1,
        th2=args.th2,
        seed=args.seed,
        max_inner_iters=args.max_inner_iters,
        global_iter_budget=args.global_iter_budget,
        stagnation_window=args.stagnation_window,
    )


def cmd_cluster(args) -> int:
    data, _labels = dataio.read_dataset_csv(args.input)
    config = _config_from_args(args, data.shape[0])
    kwargs = dict(strategy=args.strategy, record_trajectories=args.trajectories)
    if args.algo == "det":
        result = cluster_deterministic(data, config, **kwargs)
    else:
        result = cluster_stochastic(data, config, **kwargs)
    dataio.write_result_json(args.out, result, args.algo, config)
    print(f"{args.algo}: {result.n_clusters} clusters, "
          f"{result.shift_count} shifts -> {args.out}")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    result = dataio.read_result_json(args.result)
    predicted = np.asarray(result["assignments"], dtype=np.int64)
    _, labels = dataio.read_dataset_csv(args.truth)
    if labels is None:
        raise DataFormatError(f"{args.truth}: no label column")
    if labels.shape[0] != predicted.shape[0]:
        raise DataFormatError(
            f"length mismatch: {predicted.shape[0]} assignments vs "
            f"{labels.shape[0]} labels"
        )
    table = build_contingency(predicted, dataio._densify(labels))
    doc = dataio.metrics_to_dict(table, g_criterion(table), k_criterion(table))
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")
    print(
        f"G={doc['g']:.4f} (Pur_C={doc['pur_c']:.4f} Pur_D={doc['pur_d']:.4f})  "
        f"K={doc['k']:.4f} (ACP={doc['acp']:.4f} ASP={doc['asp']:.4f})"
    )
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = load_bench_config(args.config)
    sets = [int(s) for s in args.sets.split(",")]
    algos = list(ALGOS) if args.algos == "both" else [args.algos]
    seeds = list(range(args.seeds))
    report = run_bench(sets, algos, seeds, cfg, jobs=args.jobs)
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(report, fh)
        fh.write("\n")
    print(format_report(report))
    print(f"report -> {args.out}")
    return EXIT_OK


def cmd_plot(args) -> int:
    result = dataio.read_result_json(args.result)
    if "trajectories" not in result:
        raise DataFormatError(f"{args.result}: no trajectories (rerun with --trajectories)")
    data, _labels = dataio.read_dataset_csv(args.dataset)
    svg = svgplot.render_svg(
        data,
        np.asarray(result["assignments"], dtype=np.int64),
        np.asarray(result["modes"]),
        [np.asarray(t) for t in result["trajectories"]],
    )
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="msclust", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="sample a Gaussian-mixture dataset to CSV")
    src = gen.add_mutually_exclusive_group(required=True)
    src.add_argument("--set", type=int, choices=range(1, 8), help="built-in set id")
    src.add_argument("--spec", help="JSON mixture spec file")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_generate)

    clu = sub.add_parser("cluster", help="run a clustering engine on a CSV dataset")
    clu.add_argument("--algo", choices=ALGOS, required=True)
    clu.add_argument("--input", required=True, help="dataset CSV")
    clu.add_argument("--out", required=True, help="result JSON")
    clu.add_argument("--h", type=float, required=True, dest="h")
    clu.add_argument("--th1", type=float, required=True)
    clu.add_argument("--th2", type=float, required=True)
    clu.add_argument("--seed", type=int, default=0)
    clu.add_argument("--max-inner-iters", type=int, default=500)
    clu.add_argument("--global-iter-budget", type=int, default=None)
    clu.add_argument("--stagnation-window", type=int, default=None)
    clu.add_argument("--strategy", choices=("auto", "naive", "grid"), default="auto")
    clu.add_argument("--trajectories", action="store_true")
    clu.set_defaults(func=cmd_cluster)

    ev = sub.add_parser("evaluate", help="score a result against ground truth")
    ev.add_argument("--result", required=True, help="result JSON")
    ev.add_argument("--truth", required=True, help="labeled dataset CSV")
    ev.add_argument("--out", required=True, help="metrics JSON")
    ev.set_defaults(func=cmd_evaluate)

    be = sub.add_parser("bench", help="benchmark engines over the built-in sets")
    be.add_argument("--sets", default="1,2,3,4,5,6,7", help="comma-separated ids")
    be.add_argument("--algos", choices=(*ALGOS, "both"), default="both")
    be.add_argument("--seeds", type=int, default=5, help="number of seeds (0..n-1)")
    be.add_argument("--config", default=None, help="hyperparameter JSON (default: shipped)")
    be.add_argument("--jobs", type=int, default=1)
    be.add_argument("--out", required=True, help="report JSON")
    be.set_defaults(func=cmd_bench)

    pl = sub.add_parser("plot", help="render a 2-D result with trajectories to SVG")
    pl.add_argument("--result", required=True, help="result JSON with trajectories")
    pl.add_argument("--dataset", required=True, help="dataset CSV")
    pl.add_argument("--out", required=True, help="SVG path")
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DataFormatError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # pragma: no cover
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
