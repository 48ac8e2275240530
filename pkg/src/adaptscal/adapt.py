"""Weight-adaptation dynamics on the simplex.

Four update rules, all taking the step-``k`` weights and the images
``F_k^i = f(xi(W_k^i))`` computed by the auxiliary solver:

``fixed``
    No adaptation (classical a-priori weights).
``grad-image``
    Move each weight along the averaged kernel gradient evaluated in
    objective space, then project. Two objectives only.
``pairwise``
    Radial repulsion between weights whose strength and sign come from the
    kernel derivative at the objective-space distance, then project.
``pairwise-noise``
    ``pairwise`` followed by an isotropic Gaussian kick of scale ``zeta`` and
    a second projection.

Self pairs and pairs of coincident weights exert no force.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from adaptscal.errors import InvalidArgumentError, UnsupportedDimensionError
from adaptscal.kernels import core
from adaptscal.potential import Morse, Potential
from adaptscal.simplex import WeightEnsemble, project_to_simplex

DEFAULT_TAU = 1e-2
DEFAULT_STEPS = 200


class Dynamics(str, enum.Enum):
    FIXED = "fixed"
    GRAD_IMAGE = "grad-image"
    PAIRWISE = "pairwise"
    PAIRWISE_NOISE = "pairwise-noise"

    @classmethod
    def parse(cls, name) -> Dynamics:
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().lower().replace("_", "-"))
        except ValueError:
            valid = ", ".join(d.value for d in cls)
            raise InvalidArgumentError(f"unknown dynamics {name!r}; valid values: {valid}") from None


def default_zeta(m: int) -> float:
    """Noise scale used in the reference experiments: 1e-9 for m=2, 1e-6 otherwise."""
    return 1e-9 if m == 2 else 1e-6


@dataclass(frozen=True)
class AdaptConfig:
    dynamics: Dynamics = Dynamics.PAIRWISE
    tau: float = DEFAULT_TAU
    zeta: float = 0.0
    potential: Potential = field(default_factory=Morse)

    def __post_init__(self):
        object.__setattr__(self, "dynamics", Dynamics.parse(self.dynamics))
        if not (self.tau > 0.0):
            raise InvalidArgumentError(f"tau must be > 0, got {self.tau}")
        if not (self.zeta >= 0.0):
            raise InvalidArgumentError(f"zeta must be >= 0, got {self.zeta}")
        if self.dynamics is Dynamics.PAIRWISE_NOISE and self.zeta <= 0.0:
            raise InvalidArgumentError("pairwise-noise dynamics needs zeta > 0")

    def check_dimension(self, m: int) -> None:
        if self.dynamics is Dynamics.GRAD_IMAGE and m != 2:
            raise UnsupportedDimensionError(
                f"grad-image dynamics is only defined for m = 2 objectives, got m = {m}"
            )


def _fronts(weights: WeightEnsemble, fronts) -> np.ndarray:
    F = np.asarray(fronts, dtype=np.float64)
    if F.ndim != 2 or len(F) != weights.N:
        raise InvalidArgumentError(f"expected {weights.N} objective points, got shape {F.shape}")
    if not np.all(np.isfinite(F)):
        raise InvalidArgumentError("objective points must be finite")
    return F


def step_fixed(weights: WeightEnsemble, fronts=None, cfg: AdaptConfig | None = None) -> WeightEnsemble:
    return weights.advanced()


def step_grad_image(weights: WeightEnsemble, fronts, cfg: AdaptConfig) -> WeightEnsemble:
    if weights.m != 2:
        raise UnsupportedDimensionError(
            f"grad-image dynamics is only defined for m = 2 objectives, got m = {weights.m}"
        )
    F = _fronts(weights, fronts)
    if F.shape[1] != 2:
        raise UnsupportedDimensionError("grad-image dynamics needs two objectives")
    U = cfg.potential
    inc = core.grad_image_increment(F, cfg.tau, U.kind, U.param)
    return weights.advanced(project_to_simplex(weights.weights + inc))


def pairwise_increment(weights: WeightEnsemble, fronts, cfg: AdaptConfig) -> np.ndarray:
    """Pre-projection displacement of every weight under the pairwise rule."""
    F = _fronts(weights, fronts)
    U = cfg.potential
    return core.pairwise_increment(weights.weights, F, cfg.tau, U.kind, U.param)


def step_pairwise(weights: WeightEnsemble, fronts, cfg: AdaptConfig) -> WeightEnsemble:
    inc = pairwise_increment(weights, fronts, cfg)
    return weights.advanced(project_to_simplex(weights.weights + inc))


def step_pairwise_noise(
    weights: WeightEnsemble, fronts, cfg: AdaptConfig, rng: np.random.Generator, noise=None
) -> WeightEnsemble:
    """Pairwise step, then ``Pi(W + zeta * B)`` with ``B ~ N(0, I_m)`` per weight.

    The ``(N, m)`` draws are taken from ``rng`` in row order. ``noise`` may be
    passed to supply ``B`` directly.
    """
    half = step_pairwise(weights, fronts, cfg)
    if noise is None:
        noise = rng.standard_normal(half.weights.shape)
    kicked = project_to_simplex(half.weights + cfg.zeta * np.asarray(noise, dtype=np.float64))
    return WeightEnsemble(kicked, k=half.k)


def adapt_step(weights: WeightEnsemble, fronts, cfg: AdaptConfig, rng=None) -> WeightEnsemble:
    """Dispatch to the update rule selected in ``cfg``."""
    d = cfg.dynamics
    if d is Dynamics.FIXED:
        return step_fixed(weights, fronts, cfg)
    if d is Dynamics.GRAD_IMAGE:
        return step_grad_image(weights, fronts, cfg)
    if d is Dynamics.PAIRWISE:
        return step_pairwise(weights, fronts, cfg)
    if rng is None:
        raise InvalidArgumentError("pairwise-noise dynamics needs a random generator")
    return step_pairwise_noise(weights, fronts, cfg, rng)
