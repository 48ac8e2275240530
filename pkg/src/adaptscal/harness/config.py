"""Experiment configuration: a flat ``key = value`` file under ``[experiment]``.

Values that depend on the problem (``zeta``, ``lattice_h``, ``n_weights``,
``reference_size``) accept ``auto``. ``init_config_text`` emits a commented
template holding every key with its default.
"""

from __future__ import annotations

import configparser
import dataclasses
import math
import os
from dataclasses import dataclass, fields
from pathlib import Path

from adaptscal.adapt import Dynamics, default_zeta
from adaptscal.errors import ConfigError, InvalidArgumentError, UnsupportedDimensionError
from adaptscal.metrics import REFERENCE_SEED, REFERENCE_SIZE
from adaptscal.problems import get_problem
from adaptscal.simplex import lattice_size

OUT_ENV = "ADAPTSCAL_OUT"
SECTION = "experiment"
DEFAULT_LATTICE_H = {2: 14, 3: 10}


def default_out_dir() -> str:
    return os.environ.get(OUT_ENV, "runs")


@dataclass(frozen=True)
class ExperimentConfig:
    problem: str = "lame2_g0.25"
    dynamics: str = "pairwise"
    solver: str = "cbo"
    potential: str = "morse"
    potential_param: float = 30.0
    p: float = math.inf
    ideal_offset: float = 0.0
    tau: float = 1e-2
    zeta: float | None = None
    init: str = "lattice"
    lattice_h: int | None = None
    n_weights: int | None = None
    alpha: float = 1e5
    lam: float = 1.0
    sigma: float = 1.0
    dt: float = 1e-2
    n_agents: int = 20
    t_k: int = 50
    s_max: int = 10000
    shared_consensus: bool = False
    metric_morse_c: float = 30.0
    reference_size: int | None = None
    reference_seed: int = REFERENCE_SEED
    seed: int = 0
    repeats: int = 1
    jobs: int = 1
    out_dir: str = dataclasses.field(default_factory=default_out_dir)

    # --- derived values -------------------------------------------------
    @property
    def m(self) -> int:
        return get_problem(self.problem).m

    @property
    def steps(self) -> int:
        return self.s_max // self.t_k

    def resolved_zeta(self) -> float:
        return default_zeta(self.m) if self.zeta is None else self.zeta

    def resolved_lattice_h(self) -> int:
        if self.lattice_h is not None:
            return self.lattice_h
        return DEFAULT_LATTICE_H.get(self.m, 4)

    def resolved_n_weights(self) -> int:
        if self.n_weights is not None:
            return self.n_weights
        return lattice_size(self.m, self.resolved_lattice_h())

    def resolved_reference_size(self) -> int:
        if self.reference_size is not None:
            return self.reference_size
        return REFERENCE_SIZE.get(self.m, 5000)

    def replace(self, **changes) -> ExperimentConfig:
        return dataclasses.replace(self, **changes)

    def validate(self) -> ExperimentConfig:
        """Check every field; raise ``ConfigError`` naming the first bad one."""
        try:
            problem = get_problem(self.problem)
        except InvalidArgumentError as exc:
            raise ConfigError("problem", str(exc)) from None
        try:
            dyn = Dynamics.parse(self.dynamics)
        except InvalidArgumentError as exc:
            raise ConfigError("dynamics", str(exc)) from None
        if dyn is Dynamics.GRAD_IMAGE and problem.m != 2:
            raise UnsupportedDimensionError(
                f"dynamics: grad-image needs m = 2 objectives; {self.problem} has m = {problem.m}"
            )
        rules = {
            "solver": self.solver in ("cbo", "oracle"),
            "potential": self.potential in ("morse", "riesz"),
            "potential_param": self.potential_param > 0,
            "p": self.p >= 1,
            "ideal_offset": self.ideal_offset >= 0,
            "tau": self.tau > 0,
            "zeta": self.zeta is None or self.zeta >= 0,
            "init": self.init in ("lattice", "random"),
            "lattice_h": self.lattice_h is None or self.lattice_h >= 1,
            "n_weights": self.n_weights is None or self.n_weights >= 1,
            "alpha": self.alpha > 0,
            "lam": self.lam > 0,
            "sigma": self.sigma >= 0,
            "dt": self.dt > 0,
            "n_agents": self.n_agents >= 1,
            "t_k": self.t_k >= 1,
            "s_max": self.s_max >= 0,
            "metric_morse_c": self.metric_morse_c > 0,
            "reference_size": self.reference_size is None or self.reference_size >= 1,
            "reference_seed": 0 <= self.reference_seed < 2**64,
            "seed": 0 <= self.seed < 2**64,
            "repeats": self.repeats >= 1,
            "jobs": self.jobs >= 1,
        }
        for name, ok in rules.items():
            if not ok:
                raise ConfigError(name, f"invalid value {getattr(self, name)!r}")
        if dyn is Dynamics.PAIRWISE_NOISE and self.resolved_zeta() <= 0:
            raise ConfigError("zeta", "pairwise-noise dynamics needs zeta > 0")
        if self.solver == "oracle" and not math.isinf(self.p):
            raise ConfigError("p", "the oracle solver only supports p = inf")
        if self.seed + self.repeats - 1 >= 2**64:
            raise ConfigError("repeats", "seed + repeats overflows 64 bits")
        return self

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


_COMMENTS = {
    "problem": "lame2_g0.25 | lame2_g2 | lame3_g0.5 | lame3_g2 | idtlz1_3 | lame<m>_g<gamma>",
    "dynamics": "fixed | grad-image (m = 2 only) | pairwise | pairwise-noise",
    "solver": "cbo (multi-swarm consensus-based optimization) | oracle (exact front solutions)",
    "potential": "interaction kernel driving the weights: morse | riesz",
    "potential_param": "Morse decay C or Riesz exponent s",
    "p": "scalarization order; inf selects the Chebyshev form",
    "ideal_offset": "ideal point is the problem lower bound minus this offset",
    "tau": "adaptation step length",
    "zeta": "weight noise scale; auto = 1e-9 for m = 2, 1e-6 otherwise",
    "init": "initial weights: lattice | random (flat on the simplex)",
    "lattice_h": "lattice divisions; auto = 14 for m = 2 (N = 15), 10 for m = 3 (N = 66)",
    "n_weights": "number of weights for init = random; auto = lattice size",
    "alpha": "Gibbs weight exponent",
    "lam": "drift rate",
    "sigma": "diffusion strength",
    "dt": "CBO time step",
    "n_agents": "agents per sub-problem",
    "t_k": "CBO iterations between weight updates",
    "s_max": "last CBO iteration; s_max / t_k weight updates are applied",
    "shared_consensus": "pool agents of all sub-problems when forming each consensus",
    "metric_morse_c": "Morse decay used for the reported energy",
    "reference_size": "IGD reference sample size; auto = 2000 for m = 2, 5000 otherwise",
    "reference_seed": "seed of the IGD reference sample",
    "seed": "base seed (unsigned 64-bit); repeat r uses seed + r",
    "repeats": "independent runs",
    "jobs": "worker threads for repeats (results do not depend on it)",
    "out_dir": f"output directory; default from ${OUT_ENV}, else ./runs",
}


def _format(value) -> str:
    if value is None:
        return "auto"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "inf" if math.isinf(value) else repr(value)
    return str(value)


def _field_kind(f) -> str:
    t = f.type if isinstance(f.type, str) else getattr(f.type, "__name__", str(f.type))
    for kind in ("bool", "int", "float"):
        if t.startswith(kind):
            return kind
    return "str"


def _parse(f, raw: str):
    raw = raw.strip()
    kind = _field_kind(f)
    optional = "None" in str(f.type)
    if optional and raw.lower() == "auto":
        return None
    try:
        if kind == "bool":
            low = raw.lower()
            if low not in ("true", "false", "yes", "no", "1", "0"):
                raise ValueError(raw)
            return low in ("true", "yes", "1")
        if kind == "int":
            return int(raw)
        if kind == "float":
            return float(raw)
    except ValueError:
        raise ConfigError(f.name, f"expected {kind}, got {raw!r}") from None
    return raw


def dumps(cfg: ExperimentConfig, comments: bool = False) -> str:
    lines = [f"[{SECTION}]"]
    for f in fields(cfg):
        if comments:
            lines.append(f"# {_COMMENTS[f.name]}")
        lines.append(f"{f.name} = {_format(getattr(cfg, f.name))}")
        if comments:
            lines.append("")
    return "\n".join(lines).rstrip() + "\n"


def loads(text: str, base: ExperimentConfig | None = None) -> ExperimentConfig:
    """Parse config text; keys not present keep the values of ``base``."""
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError("<file>", str(exc).splitlines()[0]) from None
    if not parser.has_section(SECTION):
        raise ConfigError("<file>", f"missing [{SECTION}] section")
    known = {f.name: f for f in fields(ExperimentConfig)}
    values = {}
    for key, raw in parser.items(SECTION):
        if key not in known:
            raise ConfigError(key, "unknown key")
        values[key] = _parse(known[key], raw)
    return (base or ExperimentConfig()).replace(**values)


def load(path) -> ExperimentConfig:
    return loads(Path(path).read_text())


def init_config_text() -> str:
    header = "# adaptscal experiment configuration; every key is listed with its default.\n"
    return header + dumps(ExperimentConfig(out_dir="runs"), comments=True)
