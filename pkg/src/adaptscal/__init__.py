"""Adaptive selection of scalarized sub-problems for uniform Pareto-front approximation.

Weights on the probability simplex repel each other with forces measured in
objective space while an auxiliary solver (multi-swarm consensus-based
optimization, or an exact front oracle) solves each weighted sub-problem.
"""

from adaptscal.adapt import AdaptConfig, Dynamics, adapt_step
from adaptscal.cbo import CboConfig, solve_mcbo, solve_oracle
from adaptscal.kernels import BACKEND
from adaptscal.metrics import front_energy, igd
from adaptscal.potential import Morse, Riesz, ensemble_energy
from adaptscal.problems import get_problem
from adaptscal.scalarize import Scalarizer, scalarize
from adaptscal.simplex import WeightEnsemble, das_dennis_lattice, project_to_simplex

__version__ = "0.1.0"

__all__ = [
    "AdaptConfig",
    "BACKEND",
    "CboConfig",
    "Dynamics",
    "Morse",
    "Riesz",
    "Scalarizer",
    "WeightEnsemble",
    "adapt_step",
    "das_dennis_lattice",
    "ensemble_energy",
    "front_energy",
    "get_problem",
    "igd",
    "project_to_simplex",
    "scalarize",
    "solve_mcbo",
    "solve_oracle",
]
