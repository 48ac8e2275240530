"""Experiment scenarios behind the acceptance suite.

Importable by the tests and runnable as a script, so that a second, separate
process can regenerate every CSV for the determinism check::

    python acceptance_scenarios.py OUT_DIR JOBS
"""

from __future__ import annotations

import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from adaptscal.adapt import AdaptConfig, Dynamics
from adaptscal.cbo import CboConfig, solve_mcbo
from adaptscal.harness.config import ExperimentConfig
from adaptscal.harness.output import emit_outputs, run_dir_name
from adaptscal.harness.runner import run_repeats
from adaptscal.problems import Lame
from adaptscal.scalarize import Scalarizer

DESK_S_MAX = 50 * 50
ORACLE_SEEDS = 10
DESK_SEEDS = 5
SPHERE_SEEDS = range(10)

LINES: list[str] = []


def scenarios() -> dict[str, ExperimentConfig]:
    base = ExperimentConfig(out_dir="unused")
    out = {}
    for dyn in ("grad-image", "pairwise", "pairwise-noise"):
        out[f"lame2_oracle_{dyn}"] = base.replace(problem="lame2_g0.25", solver="oracle", dynamics=dyn,
                                                  repeats=ORACLE_SEEDS)
    for pid in ("lame3_g0.5", "lame3_g2"):
        for dyn in ("fixed", "pairwise", "pairwise-noise"):
            out[f"{pid}_desk_{dyn}"] = base.replace(problem=pid, dynamics=dyn, s_max=DESK_S_MAX, repeats=DESK_SEEDS)
    for dyn in ("pairwise", "pairwise-noise"):
        out[f"idtlz1_3_desk_{dyn}"] = base.replace(problem="idtlz1_3", dynamics=dyn, s_max=DESK_S_MAX,
                                                   repeats=DESK_SEEDS)
    out["full_scale"] = base.replace(problem="lame2_g0.25", dynamics="pairwise")
    return out


def sphere_check(seed: int):
    """Default CBO on lame2_g2 with the single weight (1, 0) and no adaptation."""
    return solve_mcbo(Lame(2, 2.0), np.array([[1.0, 0.0]]), Scalarizer(math.inf, (0.0, 0.0)), CboConfig(),
                      AdaptConfig(Dynamics.FIXED), np.random.default_rng(seed))


def run_scenario(name: str, jobs: int = 1):
    cfg = scenarios()[name].replace(jobs=jobs)
    start = time.perf_counter()
    records = run_repeats(cfg)
    return records, time.perf_counter() - start


def run_spheres(jobs: int = 1):
    start = time.perf_counter()
    if jobs == 1:
        trajs = [sphere_check(s) for s in SPHERE_SEEDS]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            trajs = list(pool.map(sphere_check, SPHERE_SEEDS))
    return trajs, time.perf_counter() - start


def write_scenario(directory: Path, name: str, records) -> None:
    for rec in records:
        emit_outputs(rec, directory / name / run_dir_name(rec.config))


def write_spheres(directory: Path, trajs) -> None:
    d = directory / "sphere_check"
    d.mkdir(parents=True, exist_ok=True)
    for seed, traj in zip(SPHERE_SEEDS, trajs):
        rows = np.hstack([traj.final_front, traj.final_points])
        np.savetxt(d / f"seed{seed}.csv", rows, fmt="%.17g", delimiter=",", header="f_1,f_2,x_1,x_2",
                   comments="")


def csv_files(directory: Path) -> dict[str, bytes]:
    return {str(p.relative_to(directory)): p.read_bytes() for p in sorted(directory.rglob("*.csv"))}


def main(argv) -> int:
    out, jobs = Path(argv[0]), int(argv[1])
    for name in scenarios():
        write_scenario(out, name, run_scenario(name, jobs)[0])
    write_spheres(out, run_spheres(jobs)[0])
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
