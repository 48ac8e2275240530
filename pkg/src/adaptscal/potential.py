"""Radially symmetric interaction kernels and the ensemble energy."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from adaptscal.errors import InvalidArgumentError, SingularityError
from adaptscal.kernels import core


@dataclass(frozen=True)
class Potential:
    """Base class. ``kind`` is the kernel code shared with the compiled core."""

    param: float

    kind = -1
    name = ""

    def __post_init__(self):
        if not (self.param > 0.0):
            raise InvalidArgumentError(f"{self.name} parameter must be > 0, got {self.param}")


@dataclass(frozen=True)
class Morse(Potential):
    """``U(z) = exp(-C |z|)``."""

    param: float = 30.0
    kind = 0
    name = "morse"

    @property
    def C(self) -> float:
        return self.param


@dataclass(frozen=True)
class Riesz(Potential):
    """``U(z) = |z|^(-s)``; singular at the origin."""

    param: float = 1.0
    kind = 1
    name = "riesz"

    @property
    def s(self) -> float:
        return self.param


def make_potential(name: str, param: float) -> Potential:
    kinds = {"morse": Morse, "riesz": Riesz}
    try:
        return kinds[name.lower()](float(param))
    except KeyError:
        raise InvalidArgumentError(f"unknown potential {name!r}; expected one of {sorted(kinds)}")


def radial_value(U: Potential, r):
    r = np.asarray(r, dtype=np.float64)
    if isinstance(U, Morse):
        return np.exp(-U.param * r)
    if np.any(r == 0.0):
        raise SingularityError("Riesz potential is singular at zero separation")
    return r ** (-U.param)


def value(U: Potential, z):
    """``U(z)`` for a difference vector ``z`` (last axis is the objective axis)."""
    z = np.asarray(z, dtype=np.float64)
    out = radial_value(U, np.linalg.norm(z, axis=-1))
    return float(out) if np.ndim(out) == 0 else out


def radial_derivative(U: Potential, r):
    """Derivative of the radial profile; exactly 0 at ``r = 0`` by convention."""
    r = np.asarray(r, dtype=np.float64)
    out = np.zeros_like(r)
    pos = r > 0.0
    if isinstance(U, Morse):
        out[pos] = -U.param * np.exp(-U.param * r[pos])
    else:
        out[pos] = -U.param * r[pos] ** (-U.param - 1.0)
    return float(out) if np.ndim(out) == 0 else out


def gradient(U: Potential, z):
    """``grad U(z) = DU(|z|) z / |z|``, and the zero vector at ``z = 0``."""
    z = np.asarray(z, dtype=np.float64)
    r = np.linalg.norm(z, axis=-1, keepdims=True)
    du = np.asarray(radial_derivative(U, r))
    return np.divide(du * z, r, out=np.zeros_like(z), where=r > 0.0)


def ensemble_energy(U: Potential, points) -> float:
    """Mean pairwise kernel value ``(1/N^2) sum_{i != j} U(p_i - p_j)``.

    The diagonal is left out: it only adds a constant for Morse and is
    infinite for Riesz.
    """
    P = np.atleast_2d(np.asarray(points, dtype=np.float64))
    if len(P) < 1:
        raise InvalidArgumentError("energy of an empty configuration is undefined")
    if len(P) == 1:
        return 0.0
    e = core.ensemble_energy(P, U.kind, U.param)
    if not np.isfinite(e):
        raise SingularityError("coincident points under a singular potential")
    return float(e)
