"""Command-line front end.

Subcommands: ``spectrum``, ``figure --which figN``, ``verify``, ``moments --s {2,4}``.

Every flag can also be supplied through an environment variable named
``SQUAREWELL_<FLAG>`` (upper case, dashes as underscores, e.g.
``SQUAREWELL_V0=25`` or ``SQUAREWELL_SWEEP_POINTS=10``).  Command-line flags
win over the environment.

Exit status: 0 success, 1 usage error, 2 verification failure,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .model import UnitSystem, WellSpec
from .momentum import intensity
from .numerics.transforms import MomentRequest, fourier_oracle, momentum_moment
from .position import p2_expectation, p4_expectation
from .spectrum import solve_all
from .verify import run_all

ENV_PREFIX = "SQUAREWELL_"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_NUMERIC = 3

FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    v0: float = 10.0
    a: float = 2.0
    mass: float = 0.5
    hbar: float = 1.0
    state_index: int = 0
    pmax: float = 100.0
    samples: int = 2001
    tol: float = 1e-9
    format: str = "csv"
    output: str | None = None
    v0_min: float = 2.0
    v0_max: float = 50.0
    sweep_points: int = 40

    def __post_init__(self):
        for name in ("v0", "a", "mass", "hbar", "pmax", "tol", "v0_min", "v0_max"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise UsageError(f"--{name.replace('_', '-')} must be positive, got {value}")
        if self.samples < 3:
            raise UsageError(f"--samples must be at least 3, got {self.samples}")
        if self.state_index < 0:
            raise UsageError(f"--state must be non-negative, got {self.state_index}")
        if self.format not in ("csv", "json"):
            raise UsageError(f"--format must be csv or json, got {self.format!r}")
        if self.v0_min >= self.v0_max:
            raise UsageError("--v0-min must be below --v0-max")
        if self.sweep_points < 2:
            raise UsageError("--sweep-points must be at least 2")

    @property
    def units(self) -> UnitSystem:
        return UnitSystem(self.mass, self.hbar)

    @property
    def well(self) -> WellSpec:
        return WellSpec(self.v0, self.a, self.units)


# -- output -----------------------------------------------------------------


def _fmt(x):
    if isinstance(x, float):
        return float(f"{x:.12g}")
    return x


def render(columns: list[str], rows: list[list], fmt: str) -> str:
    """Serialise a table as CSV (header + rows) or JSON (list of objects)."""
    if fmt == "json":
        records = [{c: _fmt(v) for c, v in zip(columns, row)} for row in rows]
        return json.dumps(records, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([f"{v:.12g}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _emit(text: str, cfg: RunConfig):
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands ---------------------------------------------------------------

SPECTRUM_COLUMNS = ["n", "parity", "beta", "energy", "alpha", "d", "norm"]


def cmd_spectrum(cfg: RunConfig):
    rows = [
        [s.n, s.parity.value, s.beta, s.energy, s.alpha, s.d, s.norm] for s in solve_all(cfg.well)
    ]
    return SPECTRUM_COLUMNS, rows


def _state(cfg: RunConfig, index: int):
    states = solve_all(cfg.well)
    if index >= len(states):
        raise UsageError(f"well has {len(states)} bound states; index {index} does not exist")
    return states[index]


def _momentum_grid(cfg: RunConfig) -> np.ndarray:
    return np.linspace(-cfg.pmax, cfg.pmax, cfg.samples)


def cmd_figure(cfg: RunConfig, which: str):
    """Plot-ready columns for one of the six figures."""
    if which not in FIGURES:
        raise UsageError(f"unknown figure {which!r}; choose from {', '.join(FIGURES)}")
    if which in ("fig1", "fig2"):
        st = _state(cfg, 0 if which == "fig1" else 1)
        ps = _momentum_grid(cfg)
        analytic = intensity(st, ps)
        oracle = [abs(fourier_oracle(st, p)) ** 2 for p in ps]
        return ["p", "I_analytic", "I_oracle"], [
            [float(p), float(i), float(o)] for p, i, o in zip(ps, analytic, oracle)
        ]
    if which in ("fig3", "fig4"):
        st = _state(cfg, 0 if which == "fig3" else 1)
        ps = _momentum_grid(cfg)
        return ["p", "p4I"], [[float(p), float(p**4 * i)] for p, i in zip(ps, intensity(st, ps))]
    s = 2 if which == "fig5" else 4
    closed = p2_expectation if s == 2 else p4_expectation
    rows = []
    for v0 in np.geomspace(cfg.v0_min, cfg.v0_max, cfg.sweep_points):
        well = WellSpec(float(v0), cfg.a, cfg.units)
        for st in solve_all(well)[:2]:
            res = momentum_moment(MomentRequest(st, s, cfg.pmax, cfg.tol, include_tail_estimate=True))
            if not res.converged:
                raise ConvergenceError(f"moment quadrature did not converge at V0={v0}")
            rows.append([float(v0), st.n, closed(st), res.value, res.tail])
    return ["v0", "state", "moment_position_space", "moment_momentum_space", "tail_estimate"], rows


def cmd_moments(cfg: RunConfig, s: int):
    st = _state(cfg, cfg.state_index)
    closed = p2_expectation(st) if s == 2 else p4_expectation(st)
    res = momentum_moment(MomentRequest(st, s, cfg.pmax, cfg.tol, include_tail_estimate=True))
    if not res.converged:
        raise ConvergenceError(f"moment quadrature did not converge (error {res.abs_error_estimate:.2e})")
    cols = ["state", "s", "pmax", "position_space", "momentum_space", "tail_estimate", "momentum_with_tail", "panels"]
    return cols, [[st.n, s, cfg.pmax, closed, res.value, res.tail, res.total, res.panels]]


def cmd_verify(cfg: RunConfig):
    reports = run_all(cfg.well, cfg.pmax)
    rows = []
    for rep in reports:
        scope = "well" if rep.state_index is None else rep.state_index
        for c in rep.checks:
            rows.append([scope, c.name, c.value, c.tolerance, c.passed])
    ok = all(r.passed for r in reports)
    return ["scope", "name", "value", "tolerance", "passed"], rows, ok


# -- argument parsing -------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


_FLAGS = [
    # (flag, dest, type, default, help)
    ("--v0", "v0", float, 10.0, "well depth V0"),
    ("--a", "a", float, 2.0, "well width a"),
    ("--mass", "mass", float, 0.5, "particle mass m (0.5 gives 2m = 1)"),
    ("--hbar", "hbar", float, 1.0, "reduced Planck constant"),
    ("--state", "state_index", int, 0, "0-based state index"),
    ("--pmax", "pmax", float, 100.0, "momentum cutoff / plotting half-range"),
    ("--samples", "samples", int, 2001, "points on momentum grids"),
    ("--tol", "tol", float, 1e-9, "quadrature tolerance"),
    ("--format", "format", str, "csv", "csv or json"),
    ("--output", "output", str, None, "write to PATH instead of stdout"),
    ("--v0-min", "v0_min", float, 2.0, "lower end of the V0 sweep (fig5/fig6)"),
    ("--v0-max", "v0_max", float, 50.0, "upper end of the V0 sweep (fig5/fig6)"),
    ("--sweep-points", "sweep_points", int, 40, "points in the V0 sweep (fig5/fig6)"),
]


def _env_default(dest: str, typ, default, environ):
    key = ENV_PREFIX + dest.upper()
    if dest == "state_index":
        key = ENV_PREFIX + "STATE"
    raw = environ.get(key)
    if raw is None:
        return default
    try:
        return typ(raw)
    except ValueError:
        raise UsageError(f"environment variable {key}={raw!r} is not a valid {typ.__name__}") from None


def build_parser(environ=None) -> argparse.ArgumentParser:
    environ = os.environ if environ is None else environ
    common = argparse.ArgumentParser(add_help=False)
    for flag, dest, typ, default, help_ in _FLAGS:
        common.add_argument(flag, dest=dest, type=typ, default=_env_default(dest, typ, default, environ), help=help_)
    parser = _Parser(prog="squarewell", description="Finite square well in position and momentum space.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("spectrum", parents=[common], help="bound-state table")
    fig = sub.add_parser("figure", parents=[common], help="dataset behind one figure")
    fig.add_argument("--which", required=True, choices=FIGURES)
    sub.add_parser("verify", parents=[common], help="run all verification checks")
    mom = sub.add_parser("moments", parents=[common], help="<p^2> or <p^4> by both routes")
    mom.add_argument("--s", type=int, required=True, choices=(2, 4))
    return parser


def main(argv=None, environ=None) -> int:
    try:
        parser = build_parser(environ)
    except UsageError as exc:
        print(f"squarewell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    fields = {dest: getattr(args, dest) for _, dest, *_ in _FLAGS}
    try:
        cfg = RunConfig(**fields)
        cfg.well  # noqa: B018 - validates units and well
        status = EXIT_OK
        if args.command == "spectrum":
            cols, rows = cmd_spectrum(cfg)
        elif args.command == "figure":
            cols, rows = cmd_figure(cfg, args.which)
        elif args.command == "moments":
            cols, rows = cmd_moments(cfg, args.s)
        else:
            cols, rows, ok = cmd_verify(cfg)
            if not ok:
                status = EXIT_VERIFY
                for row in rows:
                    if not row[-1]:
                        print(f"FAILED {row[1]}: {row[2]:.3e} > {row[3]:.1e}", file=sys.stderr)
        _emit(render(cols, rows, cfg.format), cfg)
        return status
    except (UsageError, DomainError) as exc:
        print(f"squarewell: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConvergenceError as exc:
        print(f"squarewell: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
