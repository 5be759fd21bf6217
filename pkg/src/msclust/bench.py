"""Benchmark harness: run both engines over the built-in sets and report.

Every (set, algo, seed) cell samples the set with the seed, clusters it
with the configured hyperparameters, and scores the result against the
ground truth. Cells are independent and may run in parallel; assembly
order is fixed, so the report is deterministic apart from wall times.
"""

from __future__ import annotations

import json
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from importlib import resources

from .engine import RunConfig, cluster_deterministic, cluster_stochastic
from .metrics import build_contingency, g_criterion, k_criterion
from .synth import builtin_set, sample_mixture

SCORE_KEYS = ("acp", "asp", "k", "pur_c", "pur_d", "g")
COLUMNS = SCORE_KEYS + ("n_clusters",)

ALGOS = ("det", "stoch")


def load_bench_config(path=None) -> dict:
    """Per-set hyperparameters; the shipped default is project-tuned."""
    if path is None:
        text = (
            resources.files("msclust") / "configs" / "bench_default.json"
        ).read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    cfg = json.loads(text)
    if "sets" not in cfg:
        raise ValueError("bench config needs a 'sets' mapping")
    return cfg


def set_params(cfg: dict, set_id: int) -> dict:
    params = dict(cfg.get("defaults", {}))
    params.update(cfg["sets"].get(str(set_id), {}))
    for key in ("h", "th1", "th2"):
        if key not in params:
            raise ValueError(f"bench config: set {set_id} is missing {key!r}")
    return params


def run_cell(set_id: int, algo: str, seed: int, params: dict) -> dict:
    spec = builtin_set(set_id)
    dataset = sample_mixture(spec, seed)
    j = len(dataset)
    config = RunConfig(
        h=params["h"],
        th1=params["th1"],
        th2=params["th2"],
        seed=seed,
        max_inner_iters=int(params.get("max_inner_iters", 500)),
        global_iter_budget=int(params.get("budget_factor", 100) * j),
        stagnation_window=int(params.get("window_factor", 1) * j),
    )
    strategy = params.get("strategy", "auto")
    strategy = params.get(f"{algo}_strategy", strategy)
    start = time.perf_counter()
    if algo == "det":
        result = cluster_deterministic(dataset.data, config, strategy=strategy)
    elif algo == "stoch":
        result = cluster_stochastic(dataset.data, config, strategy=strategy)
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    wall = time.perf_counter() - start
    table = build_contingency(result.assignments, dataset.labels)
    g = g_criterion(table)
    k = k_criterion(table)
    return {
        "set": set_id,
        "algo": algo,
        "seed": seed,
        "acp": k.acp,
        "asp": k.asp,
        "k": k.k,
        "pur_c": g.pur_c,
        "pur_d": g.pur_d,
        "g": g.g,
        "n_clusters": result.n_clusters,
        "shift_count": result.shift_count,
        "wall_time": wall,
    }


def run_bench(sets, algos, seeds, cfg: dict, jobs: int = 1) -> dict:
    cells = [
        (s, a, seed, set_params(cfg, s)) for s in sets for a in algos for seed in seeds
    ]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            runs = list(pool.map(lambda c: run_cell(*c), cells))
    else:
        runs = [run_cell(*c) for c in cells]

    summary = []
    for s in sets:
        entry = {"set": s, "algos": {}}
        for a in algos:
            rows = [r for r in runs if r["set"] == s and r["algo"] == a]
            agg = {"runs": len(rows)}
            for stat, fn in (("median", statistics.median), ("min", min), ("max", max)):
                agg[stat] = {c: fn(r[c] for r in rows) for c in COLUMNS}
            entry["algos"][a] = agg
        summary.append(entry)
    return {"schema": 1, "runs": runs, "summary": summary}


def format_report(report: dict) -> str:
    """Aligned text tables: one per set plus a best-of summary."""
    lines = []
    summary = report["summary"]
    sets = sorted({e["set"] for e in summary})
    header = ["", "ACP", "ASP", "K", "Pur_C", "Pur_D", "G", "#Clusters"]
    by_set = {e["set"]: e["algos"] for e in summary}
    for s in sets:
        lines.append(f"Set {s} (median over seeds)")
        lines.append("  " + "".join(f"{h:>10}" for h in header))
        for a, agg in by_set[s].items():
            med = agg["median"]
            cells = [a.upper()[0]] + [f"{med[c]:.2f}" for c in SCORE_KEYS]
            cells.append(f"{med['n_clusters']:.0f}")
            lines.append("  " + "".join(f"{c:>10}" for c in cells))
        lines.append("")
    lines.append("Summary (median K and G; * marks the better engine per set)")
    lines.append("  " + "".join(f"{h:>12}" for h in ["", *[f'Set {s}' for s in sets]]))
    by = {(s, a): agg["median"] for s, algos_ in by_set.items() for a, agg in algos_.items()}
    algos = sorted({a for algos_ in by_set.values() for a in algos_})
    for crit in ("k", "g"):
        for a in algos:
            row = [f"{crit.upper()} {a[0].upper()}"]
            for s in sets:
                v = by[(s, a)][crit]
                best = max(by[(s, other)][crit] for other in algos)
                mark = "*" if v >= best and len(algos) > 1 else ""
                row.append(f"{v:.2f}{mark}")
            lines.append("  " + "".join(f"{c:>12}" for c in row))
    return "\n".join(lines) + "\n"
