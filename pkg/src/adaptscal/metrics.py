"""Front quality measures: potential-energy diversity and IGD."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from adaptscal.errors import InvalidArgumentError
from adaptscal.kernels import core
from adaptscal.potential import Morse, Potential, ensemble_energy

REFERENCE_SIZE = {2: 2000, 3: 5000}
REFERENCE_SEED = 20220601


def igd(reference, solutions) -> float:
    """Mean Euclidean distance from each reference point to its nearest solution."""
    ref = np.atleast_2d(np.asarray(reference, dtype=np.float64))
    sol = np.atleast_2d(np.asarray(solutions, dtype=np.float64))
    if ref.size == 0 or sol.size == 0:
        raise InvalidArgumentError("IGD needs non-empty reference and solution sets")
    if ref.shape[1] != sol.shape[1]:
        raise InvalidArgumentError(f"dimension mismatch: {ref.shape} vs {sol.shape}")
    return float(np.mean(core.nearest_distances(ref, sol)))


def front_energy(U: Potential, solutions) -> float:
    return ensemble_energy(U, solutions)


def reference_front(problem, size: int | None = None, seed: int = REFERENCE_SEED) -> np.ndarray:
    """Fixed-seed reference sample used for IGD (2000 points for m=2, 5000 otherwise)."""
    if size is None:
        size = REFERENCE_SIZE.get(problem.m, 5000)
    return problem.sample_front_reference(size, np.random.default_rng(seed))


@dataclass
class MetricSeries:
    k: np.ndarray
    energy: np.ndarray
    igd: np.ndarray

    def __len__(self):
        return len(self.k)

    @classmethod
    def from_fronts(cls, fronts, reference, potential: Potential | None = None) -> MetricSeries:
        U = potential if potential is not None else Morse(30.0)
        energy = np.array([front_energy(U, F) for F in fronts])
        dist = np.array([igd(reference, F) for F in fronts])
        return cls(np.arange(len(fronts)), energy, dist)
