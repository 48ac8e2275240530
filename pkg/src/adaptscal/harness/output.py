"""Persisting run records: ``front.csv``, ``metrics.csv``, ``run.json``, ``trajectory.npz``."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

import numpy as np

from adaptscal.harness.config import ExperimentConfig, dumps

FLOAT_FMT = "%.17g"


def run_dir_name(cfg: ExperimentConfig) -> str:
    return f"{cfg.problem}_{cfg.dynamics}_{cfg.solver}_seed{cfg.seed}"


def _num(x) -> str:
    return FLOAT_FMT % x


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return "inf" if value > 0 else ("-inf" if value < 0 else "nan")
    return value


def write_front_csv(path: Path, record) -> None:
    traj = record.trajectory
    W, F, X = traj.weights[-1], traj.fronts[-1], traj.points[-1]
    m, d = F.shape[1], X.shape[1]
    header = ["i"] + [f"w_{l + 1}" for l in range(m)] + [f"f_{l + 1}" for l in range(m)]
    header += [f"x_{j + 1}" for j in range(d)]
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(header)
        for i in range(len(F)):
            out.writerow([i] + [_num(v) for v in (*W[i], *F[i], *X[i])])


def write_metrics_csv(path: Path, record) -> None:
    ms = record.metrics
    with open(path, "w", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["k", "energy", "igd"])
        for k, e, g in zip(ms.k, ms.energy, ms.igd):
            out.writerow([int(k), _num(e), _num(g)])


def run_json(record) -> dict:
    cfg = record.config
    return {
        "config": {k: _json_safe(v) for k, v in cfg.to_dict().items()},
        "config_text": dumps(cfg),
        "seed": cfg.seed,
        "backend": record.backend,
        "m": int(record.trajectory.fronts[-1].shape[1]),
        "N": int(record.trajectory.fronts[-1].shape[0]),
        "summary": record.summary(),
    }


def emit_outputs(record, directory) -> list[Path]:
    """Write every data file of ``record`` into ``directory`` (created if needed)."""
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
        paths = [directory / "front.csv", directory / "metrics.csv", directory / "run.json",
                 directory / "trajectory.npz"]
        write_front_csv(paths[0], record)
        write_metrics_csv(paths[1], record)
        paths[2].write_text(json.dumps(run_json(record), indent=2, sort_keys=True) + "\n")
        traj = record.trajectory
        np.savez(paths[3], weights=np.stack(traj.weights), fronts=np.stack(traj.fronts),
                 points=np.stack(traj.points))
    except OSError as exc:
        raise OSError(f"cannot write outputs to {directory}: {exc}") from exc
    return paths


def read_front_csv(path) -> dict:
    """Return ``{"w": (N, m), "f": (N, m), "x": (N, d)}`` from a ``front.csv``."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], np.array(rows[1:], dtype=np.float64)

    def cols(prefix):
        return body[:, [j for j, h in enumerate(header) if h.startswith(prefix)]]

    return {"w": cols("w_"), "f": cols("f_"), "x": cols("x_")}


def read_metrics_csv(path) -> dict:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    body = np.array(rows[1:], dtype=np.float64)
    return {"k": body[:, 0].astype(int), "energy": body[:, 1], "igd": body[:, 2]}


def load_run(directory) -> dict:
    """Read back what ``emit_outputs`` wrote."""
    directory = Path(directory)
    meta = json.loads((directory / "run.json").read_text())
    return {
        "meta": meta,
        "front": read_front_csv(directory / "front.csv"),
        "metrics": read_metrics_csv(directory / "metrics.csv"),
    }
