"""Command-line interface.

Subcommands::

    scheme     print a stencil, its verified order and error coefficients
    stability  spectral-radius verdict of the CN iteration matrix
    converge   grid-refinement study written as CSV
    solve      final-time nodal values written as CSV

Exit status is 0 on success, 2 for invalid input and 1 for numerical failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import harness
from .linalg import SingularMatrixError
from .schemes import (DegenerateCombinationError, SchemeLabelError, parse_label,
                      symbol_series, verify_order)
from .solver1d import ConfigurationError, tau_from_rule
from .specialfn import DomainError
from .stability import StabilityVerdict, iteration_spectral_radius

EXIT_OK, EXIT_NUMERICAL, EXIT_CONFIG = 0, 1, 2
CONFIG_ERRORS = (ConfigurationError, DomainError, SchemeLabelError, DegenerateCombinationError)


class NumericalFailure(RuntimeError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_CONFIG)


@dataclass
class RunConfig:
    command: str
    label: str | None = None
    alpha: float | None = None
    beta: float | None = None
    example: str | None = None
    problem: str | None = None
    grids: list | None = None
    n: int | None = None
    tau_rule: str = "h"
    correction: int | None = None
    k1: float = 1.0
    k2: float = 0.0
    out: str | None = None


def _grid_list(text: str) -> list:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quasicompact", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("scheme", help="show a stencil")
    p.add_argument("--label", required=True)
    p.add_argument("--alpha", type=float, required=True)

    p = sub.add_parser("stability", help="classify the CN iteration matrix")
    p.add_argument("--label", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, required=True, help="number of intervals N")
    p.add_argument("--tau-rule", default="h", help="h, h/20, h^2 or a number")
    p.add_argument("--k1", type=float, default=1.0)
    p.add_argument("--k2", type=float, default=0.0)

    for name, what in (("converge", "convergence study"), ("solve", "final-time solution")):
        p = sub.add_parser(name, help=what)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--example", choices=harness.BUILTIN_IDS)
        src.add_argument("--problem", help="JSON problem description")
        p.add_argument("--label", required=True)
        p.add_argument("--alpha", type=float)
        p.add_argument("--beta", type=float, help="y-direction order for example 4.3")
        p.add_argument("--tau-rule", default="h", help="h, h/20, h^2 or a number")
        p.add_argument("--correction", type=int, help="boundary correction order")
        p.add_argument("--out", help="output file (default stdout)")
        if name == "converge":
            p.add_argument("--grids", type=_grid_list, default=[8, 16, 32, 64])
        else:
            p.add_argument("--n", type=int, required=True, help="number of intervals N")
    return parser


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(ns.command)
    for key in ("label", "alpha", "beta", "example", "problem", "grids", "n",
                "tau_rule", "correction", "k1", "k2", "out"):
        if hasattr(ns, key):
            setattr(cfg, key, getattr(ns, key))
    if cfg.command in ("converge", "solve") and cfg.example and cfg.alpha is None:
        raise ConfigurationError("--alpha is required with --example")
    return cfg


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fmt(v: float) -> str:
    return f"{v:.10g}"


def cmd_scheme(cfg: RunConfig) -> str:
    s = parse_label(cfg.label, cfg.alpha)
    e = symbol_series(s, cfg.alpha)
    lines = [
        f"label: {s.label}",
        f"alpha: {cfg.alpha:g}",
        "c: (" + ", ".join(_fmt(v) for v in s.c) + ")",
        "d: (" + ", ".join(_fmt(v) for v in s.d) + ")",
        f"order: {verify_order(s, cfg.alpha)}",
        "e: " + " ".join(f"{v:.6e}" for v in e),
    ]
    return "\n".join(lines) + "\n"


def cmd_stability(cfg: RunConfig) -> str:
    s = parse_label(cfg.label, cfg.alpha)
    if cfg.n < 3:
        raise ConfigurationError("need N >= 3")
    tau = tau_from_rule(cfg.tau_rule, 1.0 / cfg.n)
    try:
        v = iteration_spectral_radius(s, cfg.alpha, cfg.k1, cfg.k2, cfg.n, tau)
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from None
    return StabilityVerdict.CSV_HEADER + "\n" + v.csv_row() + "\n"


def _custom_problem(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read problem file: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigurationError("problem file must hold a JSON object")
    return harness.problem_from_dict(data)


def _check_finite(values):
    if not np.all(np.isfinite(values)):
        raise NumericalFailure("solution contains non-finite values")


def cmd_converge(cfg: RunConfig) -> str:
    if cfg.problem:
        problem, corrected = _custom_problem(cfg.problem)
        report = harness.run_convergence_problem(problem, cfg.label, cfg.grids, cfg.tau_rule,
                                                 corrected, cfg.correction)
    else:
        report = harness.run_convergence(cfg.example, cfg.label, cfg.alpha, cfg.grids,
                                         cfg.tau_rule, cfg.beta, cfg.correction)
    _check_finite([r.error for r in report.rows])
    return report.to_csv()


def cmd_solve(cfg: RunConfig) -> str:
    if cfg.problem:
        problem, corrected = _custom_problem(cfg.problem)
        scheme = parse_label(cfg.label, problem.alpha)
        x, U, _ = harness.solve_problem1d(problem, scheme, cfg.n, cfg.tau_rule,
                                          corrected, cfg.correction)
    else:
        x, U, _ = harness.solve_example(cfg.example, cfg.label, cfg.alpha, cfg.n,
                                        cfg.tau_rule, cfg.beta, cfg.correction)
    _check_finite(U)
    if U.ndim == 2:
        lines = ["x,y,value"]
        lines += [f"{x[i]:.6e},{x[j]:.6e},{U[i, j]:.10e}"
                  for i in range(len(x)) for j in range(len(x))]
    else:
        lines = ["x,value"] + [f"{xi:.6e},{ui:.10e}" for xi, ui in zip(x, U)]
    return "\n".join(lines) + "\n"


COMMANDS = {"scheme": cmd_scheme, "stability": cmd_stability,
            "converge": cmd_converge, "solve": cmd_solve}


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        _emit(COMMANDS[cfg.command](cfg), cfg.out)
    except SystemExit as exc:
        return int(exc.code or 0)
    except CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NumericalFailure, SingularMatrixError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
