"""Run experiments from an ``ExperimentConfig``."""

from __future__ import annotations

import logging
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from adaptscal.adapt import AdaptConfig, Dynamics
from adaptscal.cbo import CboConfig, Trajectory, solve_mcbo, solve_oracle
from adaptscal.harness.config import ExperimentConfig
from adaptscal.kernels import BACKEND
from adaptscal.metrics import MetricSeries, reference_front
from adaptscal.potential import Morse, make_potential
from adaptscal.problems import get_problem
from adaptscal.scalarize import Scalarizer, default_ideal
from adaptscal.simplex import das_dennis_lattice, sample_uniform_simplex

log = logging.getLogger(__name__)


@dataclass
class RunRecord:
    config: ExperimentConfig
    trajectory: Trajectory
    metrics: MetricSeries
    duration: float
    backend: str = BACKEND

    @property
    def seed(self) -> int:
        return self.config.seed

    @property
    def k(self) -> int:
        return self.trajectory.k

    def summary(self) -> dict:
        return {
            "k": self.k,
            "initial_energy": float(self.metrics.energy[0]),
            "final_energy": float(self.metrics.energy[-1]),
            "initial_igd": float(self.metrics.igd[0]),
            "final_igd": float(self.metrics.igd[-1]),
            "duration_s": self.duration,
        }


def _streams(seed: int):
    """Independent generators for the solver, the weight noise and random initialization."""
    children = np.random.SeedSequence(seed).spawn(3)
    return [np.random.default_rng(c) for c in children]


def initial_weights(cfg: ExperimentConfig, m: int, rng) -> np.ndarray:
    if cfg.init == "lattice":
        return das_dennis_lattice(m, cfg.resolved_lattice_h())
    return sample_uniform_simplex(m, cfg.resolved_n_weights(), rng)


def run_experiment(cfg: ExperimentConfig, reference=None) -> RunRecord:
    """One run of the configured experiment with seed ``cfg.seed``."""
    cfg.validate()
    problem = get_problem(cfg.problem)
    solver_rng, adapt_rng, init_rng = _streams(cfg.seed)
    W0 = initial_weights(cfg, problem.m, init_rng)
    scalarizer = Scalarizer(cfg.p, tuple(default_ideal(problem, cfg.ideal_offset)))
    dyn = Dynamics.parse(cfg.dynamics)
    adapt_cfg = AdaptConfig(
        dynamics=dyn,
        tau=cfg.tau,
        zeta=cfg.resolved_zeta() if dyn is Dynamics.PAIRWISE_NOISE else 0.0,
        potential=make_potential(cfg.potential, cfg.potential_param),
    )
    if reference is None:
        reference = reference_front(problem, cfg.resolved_reference_size(), cfg.reference_seed)

    start = time.perf_counter()
    if cfg.solver == "oracle":
        traj = solve_oracle(problem, W0, scalarizer, adapt_cfg, adapt_rng, steps=cfg.steps)
    else:
        cbo_cfg = CboConfig(
            alpha=cfg.alpha,
            lam=cfg.lam,
            sigma=cfg.sigma,
            dt=cfg.dt,
            n=cfg.n_agents,
            t_k=cfg.t_k,
            s_max=cfg.s_max,
            shared_consensus=cfg.shared_consensus,
        )
        traj = solve_mcbo(problem, W0, scalarizer, cbo_cfg, adapt_cfg, solver_rng, adapt_rng=adapt_rng)
    duration = time.perf_counter() - start
    metrics = MetricSeries.from_fronts(traj.fronts, reference, Morse(cfg.metric_morse_c))
    log.info("%s %s seed=%d: k=%d energy=%.6g igd=%.6g (%.2fs)", cfg.problem, dyn.value,
             cfg.seed, traj.k, metrics.energy[-1], metrics.igd[-1], duration)
    return RunRecord(cfg, traj, metrics, duration)


def run_repeats(cfg: ExperimentConfig) -> list[RunRecord]:
    """``cfg.repeats`` runs with seeds ``seed, seed + 1, ...``; ``cfg.jobs`` threads."""
    cfg.validate()
    problem = get_problem(cfg.problem)
    reference = reference_front(problem, cfg.resolved_reference_size(), cfg.reference_seed)
    configs = [cfg.replace(seed=cfg.seed + r, repeats=1) for r in range(cfg.repeats)]
    if cfg.jobs == 1 or len(configs) == 1:
        return [run_experiment(c, reference) for c in configs]
    with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
        return list(pool.map(lambda c: run_experiment(c, reference), configs))


def compare(cfg: ExperimentConfig, dynamics=None) -> dict:
    """Run each dynamics over the same seeds.

    Returns ``{"table": {name: (median final energy, median final IGD)},
    "runs": {name: [RunRecord, ...]}}``. Dynamics that do not apply to the
    problem appear in the table as ``None``.
    """
    names = [Dynamics.parse(d) for d in (dynamics or list(Dynamics))]
    m = get_problem(cfg.problem).m
    table = {}
    runs = {}
    for dyn in names:
        if dyn is Dynamics.GRAD_IMAGE and m != 2:
            table[dyn.value] = None
            continue
        records = run_repeats(cfg.replace(dynamics=dyn.value))
        runs[dyn.value] = records
        table[dyn.value] = (
            statistics.median(r.metrics.energy[-1] for r in records),
            statistics.median(r.metrics.igd[-1] for r in records),
        )
    return {"table": table, "runs": runs}


def format_table(table: dict) -> str:
    rows = [f"{'dynamics':<16}{'median energy':>18}{'median IGD':>18}"]
    for name, vals in table.items():
        if vals is None:
            rows.append(f"{name:<16}{'n/a (m != 2)':>18}{'n/a (m != 2)':>18}")
        else:
            rows.append(f"{name:<16}{vals[0]:>18.6g}{vals[1]:>18.6g}")
    return "\n".join(rows)

