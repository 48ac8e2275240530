"""Auxiliary solvers for the scalarized sub-problems.

``solve_mcbo`` runs one consensus-based swarm per sub-problem (``n`` agents
each) and adapts the weights every ``t_k`` iterations. ``solve_oracle`` swaps
the swarm for the exact front oracle of a benchmark problem, which isolates
the weight dynamics from solver noise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from adaptscal.adapt import AdaptConfig, adapt_step
from adaptscal.errors import InvalidArgumentError, RunAbortError
from adaptscal.kernels import core
from adaptscal.scalarize import Scalarizer, scalarize
from adaptscal.simplex import WeightEnsemble, check_weights


@dataclass(frozen=True)
class CboConfig:
    alpha: float = 1e5
    lam: float = 1.0
    sigma: float = 1.0
    dt: float = 1e-2
    n: int = 20
    t_k: int = 50
    s_max: int = 200 * 50
    shared_consensus: bool = False

    def __post_init__(self):
        checks = [
            ("alpha", self.alpha > 0),
            ("lam", self.lam > 0),
            ("sigma", self.sigma >= 0),
            ("dt", self.dt > 0),
            ("n", self.n >= 1),
            ("t_k", self.t_k >= 1),
            ("s_max", self.s_max >= 0),
        ]
        for name, ok in checks:
            if not ok:
                raise InvalidArgumentError(f"invalid CBO parameter {name}={getattr(self, name)!r}")

    @property
    def adaptations(self) -> int:
        return self.s_max // self.t_k


@dataclass
class Swarm:
    """Agent positions ``X`` of shape ``(N, n, d)`` and the iteration counter."""

    X: np.ndarray
    s: int = 0


@dataclass
class Trajectory:
    """Weights, images and solver outputs at every adaptation step ``k``."""

    weights: list = field(default_factory=list)
    fronts: list = field(default_factory=list)
    points: list = field(default_factory=list)

    def record(self, W, F, X):
        self.weights.append(np.array(W, dtype=np.float64))
        self.fronts.append(np.array(F, dtype=np.float64))
        self.points.append(np.array(X, dtype=np.float64))

    @property
    def k(self) -> int:
        """Number of adaptation steps applied (one fewer than records)."""
        return len(self.weights) - 1

    @property
    def final_front(self) -> np.ndarray:
        return self.fronts[-1]

    @property
    def final_points(self) -> np.ndarray:
        return self.points[-1]


def init_swarm(problem, N: int, n: int, rng: np.random.Generator) -> Swarm:
    if N < 1 or n < 1:
        raise InvalidArgumentError(f"need N, n >= 1, got N={N}, n={n}")
    return Swarm(rng.random((N, n, problem.d)))


def consensus_point(agents, w, scalarizer: Scalarizer, alpha: float, objective) -> np.ndarray:
    """Gibbs-weighted mean of one sub-problem's agents.

    ``objective`` maps ``(n, d)`` positions to ``(n, m)`` images. Weights are
    ``exp(-alpha * (S - min S))`` so large ``alpha`` cannot underflow.
    """
    agents = np.atleast_2d(np.asarray(agents, dtype=np.float64))
    values = scalarize(scalarizer, objective(agents), w)
    return core.gibbs_consensus(agents[None], np.atleast_2d(values), alpha)[0]


def consensus_points(X, values, alpha: float) -> np.ndarray:
    """Per-sub-problem consensus from agents ``(N, n, d)`` and their values ``(N, n)``."""
    return core.gibbs_consensus(X, values, alpha)


def cbo_step(swarm: Swarm, consensus, cfg: CboConfig, rng: np.random.Generator, noise=None) -> Swarm:
    """Drift toward the consensus, diffuse by ``sigma * sqrt(dt) * |Y - X|``, clamp to the box.

    Noise is drawn as one ``(N, n, d)`` standard normal block, i.e. in
    ``(i, h)`` lexicographic order.
    """
    Y = np.asarray(consensus, dtype=np.float64)
    if not np.all(np.isfinite(Y)):
        raise RunAbortError("consensus point is not finite")
    if noise is None:
        noise = rng.standard_normal(swarm.X.shape)
    X = core.cbo_update(swarm.X, Y, noise, cfg.lam, cfg.dt, cfg.sigma)
    return Swarm(X, swarm.s + 1)


def _subproblem_values(problem, X, W, scalarizer, shared):
    images = problem.evaluate(X)
    if not np.all(np.isfinite(images)):
        bad = np.argwhere(~np.isfinite(images))[0]
        raise RunAbortError(f"non-finite objective value at agent {tuple(bad[:2])}: x={X[tuple(bad[:2])]}")
    if not shared:
        return X, scalarize(scalarizer, images, W[:, None, :])
    N, n, d = X.shape
    flat = images.reshape(N * n, -1)
    values = scalarize(scalarizer, flat[None, :, :], W[:, None, :])
    pool = np.broadcast_to(X.reshape(1, N * n, d), (N, N * n, d))
    return pool, values


def _images(problem, Y, k):
    F = problem.evaluate(Y)
    if not np.all(np.isfinite(F)):
        raise RunAbortError(f"non-finite objective at adaptation step {k}")
    return F


def solve_mcbo(
    problem,
    weights,
    scalarizer: Scalarizer,
    cfg: CboConfig,
    adapt_cfg: AdaptConfig,
    rng: np.random.Generator,
    swarm: Swarm | None = None,
    adapt_rng: np.random.Generator | None = None,
) -> Trajectory:
    """Multi-swarm CBO with periodic weight adaptation.

    Iterates ``s = 0 .. s_max``. At every ``s`` divisible by ``t_k`` the current
    consensus points are taken as the sub-problem solutions, their images are
    recorded, and (except at ``s_max``) the weights are adapted. With the
    defaults this records ``k = 0 .. 200``.

    Agent noise comes from ``rng``. Weight noise comes from ``adapt_rng`` when
    given, so runs that differ only in their dynamics share the agent noise.
    """
    W = check_weights(weights)
    if W.ndim != 2:
        raise InvalidArgumentError("weights must have shape (N, m)")
    if W.shape[1] != problem.m or scalarizer.m != problem.m:
        raise InvalidArgumentError("weights, scalarizer and problem disagree on m")
    adapt_cfg.check_dimension(problem.m)
    ens = WeightEnsemble(W)
    if swarm is None:
        swarm = init_swarm(problem, ens.N, cfg.n, rng)
    traj = Trajectory()
    for s in range(cfg.s_max + 1):
        pool, values = _subproblem_values(problem, swarm.X, ens.weights, scalarizer, cfg.shared_consensus)
        Y = consensus_points(pool, values, cfg.alpha)
        if s % cfg.t_k == 0:
            traj.record(ens.weights, _images(problem, Y, ens.k), Y)
            if s + cfg.t_k <= cfg.s_max:
                ens = adapt_step(ens, traj.fronts[-1], adapt_cfg, rng if adapt_rng is None else adapt_rng)
        if s < cfg.s_max:
            swarm = cbo_step(swarm, Y, cfg, rng)
    return traj


def oracle_solve(problem, w, scalarizer: Scalarizer) -> np.ndarray:
    """Exact Chebyshev minimizer(s) on the analytic front; rows of ``w`` are solved independently."""
    if not scalarizer.chebyshev:
        raise InvalidArgumentError("the oracle solver only handles p = inf")
    w = np.asarray(w, dtype=np.float64)
    F = problem.oracle_solve(np.atleast_2d(w), np.asarray(scalarizer.ideal))
    return F[0] if w.ndim == 1 else F


def solve_oracle(
    problem,
    weights,
    scalarizer: Scalarizer,
    adapt_cfg: AdaptConfig,
    rng: np.random.Generator,
    steps: int = 200,
) -> Trajectory:
    """Run ``steps`` adaptation steps with exact sub-problem solutions."""
    W = check_weights(weights)
    adapt_cfg.check_dimension(problem.m)
    ens = WeightEnsemble(W)
    traj = Trajectory()
    for k in range(steps + 1):
        F = oracle_solve(problem, ens.weights, scalarizer)
        traj.record(ens.weights, F, problem.decision_for(F))
        if k < steps:
            ens = adapt_step(ens, F, adapt_cfg, rng)
    return traj
