"""Command line entry point.

Exit codes: 0 success, 1 usage or configuration error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from adaptscal.adapt import Dynamics
from adaptscal.errors import ConfigError, InvalidArgumentError, RunAbortError
from adaptscal.harness import config as config_io
from adaptscal.harness.output import emit_outputs, load_run, run_dir_name
from adaptscal.harness.runner import compare, format_table, run_repeats
from adaptscal.harness.svg import plot_svg

DYNAMICS = [d.value for d in Dynamics]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _dynamics(value: str) -> str:
    try:
        return Dynamics.parse(value).value
    except InvalidArgumentError:
        raise argparse.ArgumentTypeError(f"invalid dynamics {value!r}; valid values: {', '.join(DYNAMICS)}")


def _u64(value: str) -> int:
    seed = int(value)
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return seed


def _experiment_flags(p):
    p.add_argument("--config", type=Path, help="experiment config file (see init-config)")
    p.add_argument("--problem", help="problem id, e.g. lame2_g0.25, lame3_g2, idtlz1_3")
    p.add_argument("--dynamics", type=_dynamics, help=" | ".join(DYNAMICS))
    p.add_argument("--seed", type=_u64)
    p.add_argument("--repeats", type=int)
    p.add_argument("--out", help=f"output directory (default ${config_io.OUT_ENV} or ./runs)")
    p.add_argument("--oracle-solver", action="store_true", help="solve sub-problems exactly instead of with CBO")
    p.add_argument("--s-max", type=int, help="last CBO iteration (default 10000)")
    p.add_argument("--jobs", type=int, help="threads for independent repeats")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="adaptscal", description="Adaptive scalarization weights for Pareto-front approximation")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    run = sub.add_parser("run", help="run one experiment (optionally repeated)")
    _experiment_flags(run)
    cmp_ = sub.add_parser("compare", help="fixed weights vs adaptive dynamics on the same seeds")
    _experiment_flags(cmp_)
    plot = sub.add_parser("plot", help="re-render SVG figures of a finished run")
    plot.add_argument("run_dir", type=Path)
    init = sub.add_parser("init-config", help="write a commented config template")
    init.add_argument("path", nargs="?", type=Path, help="destination (stdout if omitted)")
    return parser


def _config_from(args) -> config_io.ExperimentConfig:
    cfg = config_io.load(args.config) if args.config else config_io.ExperimentConfig()
    overrides = {
        "problem": args.problem,
        "dynamics": args.dynamics,
        "seed": args.seed,
        "repeats": args.repeats,
        "out_dir": args.out,
        "s_max": args.s_max,
        "jobs": args.jobs,
    }
    cfg = cfg.replace(**{k: v for k, v in overrides.items() if v is not None})
    if args.oracle_solver:
        cfg = cfg.replace(solver="oracle")
    return cfg.validate()


def _write(record, base: Path) -> Path:
    directory = base / run_dir_name(record.config)
    emit_outputs(record, directory)
    if record.trajectory.fronts[-1].shape[1] in (2, 3):
        plot_svg(load_run(directory), directory)
    return directory


def _cmd_run(args) -> int:
    cfg = _config_from(args)
    base = Path(cfg.out_dir)
    for record in run_repeats(cfg):
        directory = _write(record, base)
        s = record.summary()
        print(f"{directory}: k={s['k']} energy={s['final_energy']:.6g} igd={s['final_igd']:.6g}")
    return 0


def _cmd_compare(args) -> int:
    cfg = _config_from(args)
    chosen = None if args.dynamics is None else ["fixed", args.dynamics]
    result = compare(cfg, chosen)
    base = Path(cfg.out_dir) / "compare"
    for records in result["runs"].values():
        for record in records:
            _write(record, base)
    print(f"{cfg.problem}, {cfg.repeats} seed(s) from {cfg.seed}, solver={cfg.solver}")
    print(format_table(result["table"]))
    return 0


def _cmd_plot(args) -> int:
    for path in plot_svg(load_run(args.run_dir), args.run_dir):
        print(path)
    return 0


def _cmd_init_config(args) -> int:
    text = config_io.init_config_text()
    if args.path is None:
        sys.stdout.write(text)
    else:
        args.path.write_text(text)
        print(args.path)
    return 0


COMMANDS = {"run": _cmd_run, "compare": _cmd_compare, "plot": _cmd_plot, "init-config": _cmd_init_config}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, InvalidArgumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (RunAbortError, OSError, RuntimeError, FileNotFoundError) as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
