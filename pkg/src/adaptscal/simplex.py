"""Geometry of the probability simplex: projection, lattices and sampling.

A weight is a 1-D float array with nonnegative entries summing to one. An
ensemble of ``N`` weights is stored as an ``(N, m)`` array.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from math import comb

import numpy as np

from adaptscal.errors import InvalidArgumentError
from adaptscal.kernels import core

SUM_TOL = 1e-12


def check_weights(W, tol: float = SUM_TOL) -> np.ndarray:
    """Validate one weight (shape ``(m,)``) or a stack of them (``(N, m)``)."""
    W = np.asarray(W, dtype=np.float64)
    if W.ndim not in (1, 2) or W.shape[-1] < 2:
        raise InvalidArgumentError(f"weights need m >= 2 components, got shape {W.shape}")
    if not np.all(np.isfinite(W)):
        raise InvalidArgumentError("weights must be finite")
    if np.any(W < 0.0):
        raise InvalidArgumentError("weights must be nonnegative")
    if np.any(np.abs(W.sum(axis=-1) - 1.0) > tol):
        raise InvalidArgumentError("weights must sum to 1")
    return W


@dataclass(frozen=True)
class WeightEnsemble:
    """``N`` simplex weights plus the adaptation-step counter ``k``."""

    weights: np.ndarray
    k: int = 0

    def __post_init__(self):
        W = check_weights(self.weights)
        if W.ndim != 2 or len(W) < 1:
            raise InvalidArgumentError("an ensemble needs shape (N, m) with N >= 1")
        if self.k < 0:
            raise InvalidArgumentError("k must be >= 0")
        W = W.copy()
        W.flags.writeable = False
        object.__setattr__(self, "weights", W)

    @property
    def N(self) -> int:
        return self.weights.shape[0]

    @property
    def m(self) -> int:
        return self.weights.shape[1]

    def advanced(self, weights=None) -> WeightEnsemble:
        """Return the next-step ensemble (``k + 1``), optionally with new weights."""
        return replace(self, weights=self.weights if weights is None else weights, k=self.k + 1)


def project_to_simplex(v) -> np.ndarray:
    """Euclidean projection of ``v`` onto the probability simplex.

    Accepts a single vector ``(m,)`` or a stack ``(N, m)`` and projects
    row-wise with the sort-and-threshold algorithm. The result is divided by
    its sum afterwards so rounding never leaves the simplex.

    Raises
    ------
    InvalidArgumentError
        If ``v`` has fewer than two components or is not finite.
    """
    v = np.asarray(v, dtype=np.float64)
    if v.ndim not in (1, 2) or v.shape[-1] < 2:
        raise InvalidArgumentError(f"projection needs m >= 2, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise InvalidArgumentError("cannot project a non-finite vector")
    out = core.project_rows(np.atleast_2d(v))
    return out[0] if v.ndim == 1 else out


def das_dennis_lattice(m: int, H: int) -> np.ndarray:
    """All weights whose components are multiples of ``1/H``, lexicographically sorted.

    There are ``C(H + m - 1, m - 1)`` of them, including every vertex.
    """
    if m < 2 or H < 1:
        raise InvalidArgumentError(f"need m >= 2 and H >= 1, got m={m}, H={H}")

    def compositions(parts, total):
        if parts == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(parts - 1, total - first):
                yield (first,) + rest

    counts = np.array(list(compositions(m, H)), dtype=np.float64)
    assert len(counts) == comb(H + m - 1, m - 1)
    return counts / H


def lattice_size(m: int, H: int) -> int:
    return comb(H + m - 1, m - 1)


def sample_uniform_simplex(m: int, N: int, rng: np.random.Generator) -> np.ndarray:
    """``N`` draws from the flat distribution on the simplex, via sorted-uniform spacings."""
    if m < 2 or N < 1:
        raise InvalidArgumentError(f"need m >= 2 and N >= 1, got m={m}, N={N}")
    cuts = np.sort(rng.random((N, m - 1)), axis=1)
    edges = np.concatenate([np.zeros((N, 1)), cuts, np.ones((N, 1))], axis=1)
    W = np.diff(edges, axis=1)
    return W / W.sum(axis=1, keepdims=True)
