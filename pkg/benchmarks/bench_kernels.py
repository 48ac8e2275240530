"""Compare the compiled and pure-Python kernel backends.

Per-kernel timings run in this process on identical inputs. End-to-end
timings run one short experiment per backend in a subprocess, since the
backend is fixed at import time via ADAPTSCAL_KERNELS.

    python benchmarks/bench_kernels.py [--repeat 5] [--s-max 1000]
"""

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from adaptscal.kernels import available_backends

E2E = """
import time
from adaptscal.harness.config import ExperimentConfig
from adaptscal.harness.runner import run_experiment
from adaptscal.kernels import BACKEND
cfg = ExperimentConfig(problem="{problem}", dynamics="pairwise-noise", s_max={s_max}, out_dir="unused")
run_experiment(cfg)
t = time.perf_counter()
rec = run_experiment(cfg)
print(BACKEND, time.perf_counter() - t, rec.metrics.igd[-1])
"""


def kernel_cases(rng):
    W = rng.dirichlet(np.ones(3), 66)
    F = rng.random((66, 3))
    F2 = rng.random((15, 2))
    X = rng.random((66, 20, 3))
    S = rng.random((66, 20))
    Y = rng.random((66, 3))
    Z = rng.standard_normal(X.shape)
    ref = rng.random((5000, 3))
    V = rng.normal(size=(66, 3))
    return {
        "project_rows (66x3)": lambda k: k.project_rows(V),
        "pairwise_increment (N=66)": lambda k: k.pairwise_increment(W, F, 0.01, 0, 30.0),
        "grad_image_increment (N=15)": lambda k: k.grad_image_increment(F2, 0.01, 0, 30.0),
        "ensemble_energy (N=66)": lambda k: k.ensemble_energy(F, 0, 30.0),
        "nearest_distances (5000x66)": lambda k: k.nearest_distances(ref, F),
        "gibbs_consensus (66x20)": lambda k: k.gibbs_consensus(X, S, 1e5),
        "cbo_update (66x20x3)": lambda k: k.cbo_update(X, Y, Z, 1.0, 0.01, 1.0),
    }


def best_time(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat=repeat, number=number)) / number


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--s-max", type=int, default=1000)
    ap.add_argument("--problem", default="lame3_g2")
    args = ap.parse_args(argv)

    backends = available_backends()
    names = sorted(backends)
    print(f"{'kernel':<30}" + "".join(f"{n + ' [us]':>16}" for n in names) + f"{'speedup':>10}")
    for label, call in kernel_cases(np.random.default_rng(0)).items():
        times = {n: best_time(lambda: call(backends[n]), args.repeat) for n in names}
        speed = times["python"] / times["cython"] if "cython" in times else float("nan")
        print(f"{label:<30}" + "".join(f"{times[n] * 1e6:>16.1f}" for n in names) + f"{speed:>9.1f}x")

    print(f"\nend to end: {args.problem}, pairwise-noise, s_max={args.s_max}")
    code = E2E.format(problem=args.problem, s_max=args.s_max)
    for n in names:
        env = dict(os.environ, ADAPTSCAL_KERNELS=n)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, seconds, final_igd = out.stdout.split()
        print(f"  {backend:<8} {float(seconds):8.2f} s   final IGD {float(final_igd):.6g}")


if __name__ == "__main__":
    main()
