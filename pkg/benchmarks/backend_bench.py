#!/usr/bin/env python3
"""Compare the numba kernels against the pure-numpy fallback.

The backend is fixed at import time from MSCLUST_BACKEND, so this
script re-executes itself in a subprocess per backend and then prints a
timing table plus a partition-agreement check.

Usage: python benchmarks/backend_bench.py [--set 2] [--seed 0] [--repeat 3]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def run_measurement(set_id: int, seed: int, repeat: int) -> dict:
    import numpy as np

    from msclust import NUMBA_ENABLED, RunConfig
    from msclust.engine import cluster_deterministic, cluster_stochastic
    from msclust.synth import builtin_set, sample_mixture

    data = sample_mixture(builtin_set(set_id), seed).data
    config = RunConfig(h=0.8, th1=1e-3, th2=0.4, seed=seed,
                       global_iter_budget=30 * data.shape[0])
    out = {"backend": "numba" if NUMBA_ENABLED else "numpy", "timings": {}}
    for name, fn in (
        ("det/grid", lambda: cluster_deterministic(data, config, strategy="grid")),
        ("det/naive", lambda: cluster_deterministic(data, config, strategy="naive")),
        ("stoch/naive", lambda: cluster_stochastic(data, config, strategy="naive")),
    ):
        fn()  # warm up (JIT compilation on the numba path)
        times = []
        for _ in range(repeat):
            t0 = time.perf_counter()
            result = fn()
            times.append(time.perf_counter() - t0)
        out["timings"][name] = min(times)
        out[f"partition/{name}"] = np.sort(
            np.bincount(result.assignments)
        ).tolist()
    return out


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--set", type=int, default=2, choices=range(1, 8))
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--measure", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()

    if args.measure:
        print(json.dumps(run_measurement(args.set, args.seed, args.repeat)))
        return 0

    results = {}
    for backend in ("numba", "numpy"):
        env = dict(os.environ, MSCLUST_BACKEND=backend)
        proc = subprocess.run(
            [sys.executable, __file__, "--measure", "--set", str(args.set),
             "--seed", str(args.seed), "--repeat", str(args.repeat)],
            env=env, capture_output=True, text=True, check=True,
        )
        results[backend] = json.loads(proc.stdout)

    print(f"Set {args.set}, seed {args.seed} (best of {args.repeat})")
    print(f"{'kernel':<14}{'numba':>10}{'numpy':>10}{'speedup':>10}")
    for name in results["numba"]["timings"]:
        nb = results["numba"]["timings"][name]
        np_ = results["numpy"]["timings"][name]
        print(f"{name:<14}{nb:>9.3f}s{np_:>9.3f}s{np_ / nb:>9.1f}x")
    agree = all(
        results["numba"][key] == results["numpy"][key]
        for key in results["numba"]
        if key.startswith("partition/")
    )
    print(f"cluster-size profiles agree across backends: {agree}")
    return 0 if agree else 1


if __name__ == "__main__":
    sys.exit(main())
