"""Benchmark problems with closed-form Pareto fronts.

``Lame(m, gamma)``
    Hyperspherical Lamé superspheres. The first ``m - 1`` variables are angles
    ``theta_j = pi/2 * x_j``, the last one is the distance term ``g = x_m``, and
    ``f_l = (1 + g) * s_l ** (2 / gamma)`` where ``s`` is the point on the
    positive unit-sphere orthant. The front is ``sum_l f_l ** gamma = 1``.
``InvertedDTLZ1()``
    Three-objective inverted DTLZ1 with one multimodal distance variable. The
    front is the triangle ``sum_l f_l = 1, 0 <= f_l <= 0.5``.

Problems are addressed by id: ``lame2_g0.25``, ``lame3_g0.5``, ``lame3_g2``,
``idtlz1_3`` (any ``lame{m}_g{gamma}`` parses).
"""

from __future__ import annotations

import math
import re

import numpy as np

from adaptscal.errors import InvalidArgumentError
from adaptscal.simplex import sample_uniform_simplex

WEIGHT_FLOOR = 1e-12


class Problem:
    """Box-constrained problem on ``[0, 1]^d`` with ``d = m``."""

    name = ""

    def __init__(self, m: int):
        if m < 2:
            raise InvalidArgumentError(f"need m >= 2 objectives, got {m}")
        self.m = m
        self.d = m

    @property
    def lower_bounds(self) -> np.ndarray:
        return np.zeros(self.m)

    @property
    def params(self) -> dict:
        return {}

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r})"

    def evaluate(self, X) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, X):
        return self.evaluate(X)

    def front_residual(self, Y):
        raise NotImplementedError

    def sample_front_reference(self, R: int, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def oracle_solve(self, W, ideal=None) -> np.ndarray:
        """Exact Chebyshev minimizers on the front for each weight row of ``W``."""
        raise NotImplementedError

    def decision_for(self, Y) -> np.ndarray:
        """A Pareto-optimal decision vector mapping onto each front point of ``Y``."""
        raise NotImplementedError

    def _check_box(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.shape[-1] != self.d:
            raise InvalidArgumentError(f"{self.name} expects d={self.d}, got shape {X.shape}")
        return X

    def _prepare_oracle(self, W, ideal):
        W = np.atleast_2d(np.asarray(W, dtype=np.float64))
        if W.shape[1] != self.m:
            raise InvalidArgumentError(f"weights must have m={self.m} components")
        ideal = np.zeros(self.m) if ideal is None else np.asarray(ideal, dtype=np.float64)
        if np.any(ideal > 0.0):
            raise InvalidArgumentError("oracle solver needs an ideal point <= 0")
        return np.maximum(W, WEIGHT_FLOOR), ideal


def _sphere_orthant(theta):
    """Map angles ``(..., m-1)`` in ``[0, pi/2]`` to the unit sphere's positive orthant."""
    m = theta.shape[-1] + 1
    c, s = np.cos(theta), np.sin(theta)
    out = np.empty(theta.shape[:-1] + (m,))
    for l in range(m):
        val = np.prod(c[..., l:], axis=-1)
        if l > 0:
            val = val * s[..., l - 1]
        out[..., l] = val
    return out


def _sphere_jacobian(theta):
    """``d s_l / d theta_j`` with shape ``(..., m, m-1)``."""
    m = theta.shape[-1] + 1
    c, s = np.cos(theta), np.sin(theta)
    J = np.zeros(theta.shape[:-1] + (m, m - 1))
    for l in range(m):
        for j in range(m - 1):
            if j < l - 1:
                continue
            factors = []
            for jj in range(l, m - 1):
                factors.append(-s[..., jj] if jj == j else c[..., jj])
            if l > 0:
                factors.append(c[..., l - 1] if j == l - 1 else s[..., l - 1])
            J[..., l, j] = np.prod(np.stack(factors, axis=-1), axis=-1) if factors else 1.0
    return J


class Lame(Problem):
    def __init__(self, m: int = 2, gamma: float = 1.0):
        super().__init__(m)
        if not (gamma > 0.0):
            raise InvalidArgumentError(f"gamma must be > 0, got {gamma}")
        self.gamma = float(gamma)
        self.name = f"lame{m}_g{self.gamma:g}"

    @property
    def params(self) -> dict:
        return {"gamma": self.gamma}

    def _front_from_angles(self, theta):
        return _sphere_orthant(theta) ** (2.0 / self.gamma)

    def evaluate(self, X):
        X = self._check_box(X)
        theta = 0.5 * np.pi * X[..., : self.m - 1]
        g = X[..., self.m - 1 :]
        return (1.0 + g) * self._front_from_angles(theta)

    def front_residual(self, Y):
        Y = np.asarray(Y, dtype=np.float64)
        out = np.abs(np.sum(np.abs(Y) ** self.gamma, axis=-1) - 1.0)
        return float(out) if np.ndim(out) == 0 else out

    def sample_front_reference(self, R, rng):
        """Approximately area-uniform front sample.

        Angles are drawn uniformly and thinned with acceptance proportional to
        the surface element of the angle-to-front map.
        """
        if R < 1:
            raise InvalidArgumentError("R must be >= 1")
        q = 2.0 / self.gamma
        grid = np.stack(
            np.meshgrid(*[np.linspace(1e-3, np.pi / 2 - 1e-3, 101)] * (self.m - 1), indexing="ij"),
            axis=-1,
        ).reshape(-1, self.m - 1)
        bound = self._area_element(grid, q).max()
        out = []
        have = 0
        while have < R:
            theta = rng.random((4 * R, self.m - 1)) * (np.pi / 2)
            dens = self._area_element(theta, q)
            bound = max(bound, dens.max())
            keep = theta[rng.random(len(theta)) * bound < dens]
            out.append(keep)
            have += len(keep)
        theta = np.concatenate(out)[:R]
        return self._front_from_angles(theta)

    def _area_element(self, theta, q):
        s = _sphere_orthant(theta)
        J = _sphere_jacobian(theta) * (q * np.abs(s) ** (q - 1.0))[..., None]
        gram = np.einsum("...lj,...lk->...jk", J, J)
        return np.sqrt(np.abs(np.linalg.det(gram)))

    def oracle_solve(self, W, ideal=None):
        W, ideal = self._prepare_oracle(W, ideal)
        gam = self.gamma
        if not np.any(ideal):
            t = np.sum(W ** (-gam), axis=1) ** (-1.0 / gam)
            return t[:, None] / W
        # sum_l max(0, t / w_l + y_l) ** gamma is increasing in t; bisect all rows at once
        lo = np.zeros(len(W))
        hi = np.max(W * (1.0 - ideal), axis=1)
        for _ in range(2000):
            mid = 0.5 * (lo + hi)
            if np.all((mid <= lo) | (mid >= hi)):
                break
            over = np.sum(np.maximum(0.0, mid[:, None] / W + ideal) ** gam, axis=1) > 1.0
            hi = np.where(over, mid, hi)
            lo = np.where(over, lo, mid)
        f = np.maximum(0.0, hi[:, None] / W + ideal)
        return f / (np.sum(f**gam, axis=1) ** (1.0 / gam))[:, None]

    def decision_for(self, Y):
        Y = np.atleast_2d(np.asarray(Y, dtype=np.float64))
        s = np.maximum(Y, 0.0) ** (self.gamma / 2.0)
        X = np.zeros_like(s)
        for l in range(1, self.m):
            below = np.sqrt(np.sum(s[:, :l] ** 2, axis=1))
            X[:, l - 1] = np.arctan2(s[:, l], below) * (2.0 / np.pi)
        return np.clip(X, 0.0, 1.0)

    def front_curve(self, num: int = 200) -> np.ndarray:
        """Dense polyline along the front (m = 2 only), for plotting."""
        theta = np.linspace(0.0, np.pi / 2, num)[:, None]
        return self._front_from_angles(theta)


class InvertedDTLZ1(Problem):
    name = "idtlz1_3"

    def __init__(self):
        super().__init__(3)

    def distance(self, X):
        z = np.asarray(X)[..., 2] - 0.5
        return 100.0 * (1.0 + z**2 - np.cos(20.0 * np.pi * z))

    def evaluate(self, X):
        X = self._check_box(X)
        scale = 1.0 + self.distance(X)
        x1, x2 = X[..., 0], X[..., 1]
        h = np.stack([x1 * x2, x1 * (1.0 - x2), 1.0 - x1], axis=-1)
        return 0.5 * scale[..., None] * (1.0 - h)

    def front_residual(self, Y):
        Y = np.asarray(Y, dtype=np.float64)
        out = np.abs(np.sum(Y, axis=-1) - 1.0) + np.sum(np.maximum(0.0, Y - 0.5), axis=-1)
        return float(out) if np.ndim(out) == 0 else out

    def sample_front_reference(self, R, rng):
        if R < 1:
            raise InvalidArgumentError("R must be >= 1")
        out = []
        have = 0
        while have < R:
            cand = sample_uniform_simplex(3, 4 * R, rng)
            keep = cand[np.all(cand <= 0.5, axis=1)]
            out.append(keep)
            have += len(keep)
        return np.concatenate(out)[:R]

    def oracle_solve(self, W, ideal=None):
        W, ideal = self._prepare_oracle(W, ideal)
        return np.stack([self._oracle_row(w, ideal) for w in W])

    @staticmethod
    def _oracle_row(w, ideal):
        # sum_l clip(t / w_l + y_l, 0, 1/2) is piecewise linear and nondecreasing in t:
        # locate the piece where it crosses 1 and solve that piece exactly
        def level(t):
            return np.clip(t / w + ideal, 0.0, 0.5)

        knots = np.unique(np.concatenate([-ideal * w, (0.5 - ideal) * w]))
        sums = np.array([level(t).sum() for t in knots])
        j = int(np.searchsorted(sums, 1.0))
        if j < len(sums) and sums[j] == 1.0:
            return level(knots[j])
        # classify components inside the bracketing piece, away from rounding at the knots
        mid = 0.5 * (knots[j - 1] + knots[j])
        free = (mid / w + ideal > 0.0) & (mid / w + ideal < 0.5)
        f = level(mid)
        t = (1.0 - f[~free].sum() - ideal[free].sum()) / np.sum(1.0 / w[free])
        return level(t)

    def decision_for(self, Y):
        Y = np.atleast_2d(np.asarray(Y, dtype=np.float64))
        h = 0.5 - Y
        x1 = np.clip(1.0 - 2.0 * h[:, 2], 0.0, 1.0)
        denom = h[:, 0] + h[:, 1]
        x2 = np.divide(h[:, 0], denom, out=np.full_like(denom, 0.5), where=denom > 0.0)
        return np.stack([x1, np.clip(x2, 0.0, 1.0), np.full_like(x1, 0.5)], axis=1)


_LAME_ID = re.compile(r"^lame(\d+)_g([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)$")

PROBLEM_IDS = ("lame2_g0.25", "lame2_g2", "lame3_g0.5", "lame3_g2", "idtlz1_3")


def get_problem(problem_id: str) -> Problem:
    """Build a problem from its string id."""
    pid = problem_id.strip().lower()
    if pid == "idtlz1_3":
        return InvertedDTLZ1()
    match = _LAME_ID.match(pid)
    if match:
        gamma = float(match.group(2))
        if not math.isfinite(gamma) or gamma <= 0.0:
            raise InvalidArgumentError(f"bad Lamé curvature in {problem_id!r}")
        return Lame(int(match.group(1)), gamma)
    raise InvalidArgumentError(
        f"unknown problem {problem_id!r}; expected one of {', '.join(PROBLEM_IDS)} or lame<m>_g<gamma>"
    )
