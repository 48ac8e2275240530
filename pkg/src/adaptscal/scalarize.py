"""Weighted l_p semi-norm scalarization about an ideal point."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from adaptscal.errors import InvalidArgumentError


@dataclass(frozen=True)
class Scalarizer:
    """Scalarization order ``p`` (``math.inf`` for Chebyshev) and ideal point."""

    p: float
    ideal: tuple

    def __post_init__(self):
        if not (self.p >= 1.0):
            raise InvalidArgumentError(f"p must be >= 1, got {self.p}")
        ideal = tuple(float(v) for v in self.ideal)
        if not all(math.isfinite(v) for v in ideal):
            raise InvalidArgumentError("ideal point must be finite")
        object.__setattr__(self, "ideal", ideal)

    @property
    def m(self) -> int:
        return len(self.ideal)

    @property
    def chebyshev(self) -> bool:
        return math.isinf(self.p)

    def __call__(self, fval, w):
        return scalarize(self, fval, w)


def scalarize(s: Scalarizer, fval, w):
    """Evaluate ``S(f, w)``; broadcasts over leading axes of ``fval`` and ``w``.

    For finite ``p`` this is ``(sum_l w_l |f_l - y_l|^p)^(1/p)``. For ``p = inf``
    it is the Chebyshev form ``max_l w_l |f_l - y_l|``, with the weights entering
    linearly.
    """
    fval = np.asarray(fval, dtype=np.float64)
    w = np.asarray(w, dtype=np.float64)
    if fval.shape[-1] != s.m or w.shape[-1] != s.m:
        raise InvalidArgumentError(
            f"dimension mismatch: ideal has m={s.m}, fval {fval.shape}, w {w.shape}"
        )
    dev = np.abs(fval - np.asarray(s.ideal))
    if s.chebyshev:
        out = np.max(w * dev, axis=-1)
    elif s.p == 1.0:
        out = np.sum(w * dev, axis=-1)
    else:
        out = np.sum(w * dev**s.p, axis=-1) ** (1.0 / s.p)
    return float(out) if np.ndim(out) == 0 else out


def default_ideal(problem, offset: float = 0.0) -> np.ndarray:
    """Ideal point for ``problem``: its analytic lower bounds shifted down by ``offset``."""
    if offset < 0.0:
        raise InvalidArgumentError("utopian offset must be >= 0")
    return np.asarray(problem.lower_bounds, dtype=np.float64) - offset
