"""Command-line front end.

Subcommands:

* ``sweep``: dimensionless rate over a gamma grid, as CSV or JSON, with an
  optional rendered figure;
* ``rate``: physical multimode rate in bits/s for a given area and power;
* ``single-direction``: broadband single-direction rate;
* ``verify``: the numerical oracle suite, nonzero exit on any failed bound.

Exit codes: 0 success, 1 usage error, 2 solver failure, 3 verification
failure.  Numeric table output is deterministic: identical invocations
produce byte-identical tables (floats printed with 17 significant digits).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .capacity import (
    BracketingError,
    ChannelGeometry,
    DirectionSpec,
    PhysicalChannelSpec,
    gamma_of,
    rate_dimensionless,
    rate_multimode_physical,
    rate_single_direction,
)
from .spectral import ToleranceConfig, TruncationError
from .verify import default_suite

__all__ = ["SweepSpec", "OutputRecord", "run_sweep", "format_csv", "format_json", "main"]

CSV_HEADER = "gamma,beta0,w,rate,rate_asym,ratio,residual"

# gamma below which the asymptotic closed form is flagged as out of regime
_ASYMPTOTIC_REGIME_GAMMA = 100.0


@dataclass(frozen=True)
class SweepSpec:
    """A gamma grid: endpoints, point count and spacing."""

    gamma_min: float
    gamma_max: float
    points: int
    spacing: str = "log"

    def __post_init__(self):
        if self.gamma_min <= 0 or self.gamma_max <= 0:
            raise ValueError("gamma endpoints must be positive")
        if self.gamma_min >= self.gamma_max:
            raise ValueError("gamma_min must be below gamma_max")
        if not 2 <= self.points <= 10**5:
            raise ValueError(f"points must lie in [2, 1e5], got {self.points}")
        if self.spacing not in ("log", "linear"):
            raise ValueError(f"spacing must be 'log' or 'linear', got {self.spacing!r}")

    def grid(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.gamma_min, self.gamma_max, self.points)
        return np.linspace(self.gamma_min, self.gamma_max, self.points)


@dataclass(frozen=True)
class OutputRecord:
    """One sweep row."""

    gamma: float
    beta0: float
    w: float
    rate: float
    rate_asym: float
    ratio: float
    residual: float


class SweepPointError(RuntimeError):
    """Solver failure at one sweep point, with its row index."""

    def __init__(self, index: int, gamma: float, cause: Exception):
        super().__init__(f"sweep point {index} (gamma = {gamma:.6g}): {cause}")
        self.index = index
        self.gamma = gamma
        self.cause = cause


def run_sweep(spec: SweepSpec, tol: ToleranceConfig) -> list[OutputRecord]:
    """Solve every grid point, ascending in gamma."""
    records = []
    for i, gamma in enumerate(spec.grid()):
        try:
            sol = rate_dimensionless(float(gamma), tol)
        except (TruncationError, BracketingError) as exc:
            raise SweepPointError(i, float(gamma), exc) from exc
        records.append(OutputRecord(
            gamma=sol.gamma, beta0=sol.beta0, w=sol.w_at_beta0,
            rate=sol.rate_dimensionless, rate_asym=sol.rate_asymptotic,
            ratio=sol.ratio, residual=sol.residual))
    return records


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def format_csv(records: list[OutputRecord]) -> str:
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join(_fmt(v) for v in
                              (r.gamma, r.beta0, r.w, r.rate, r.rate_asym,
                               r.ratio, r.residual)))
    return "\n".join(lines) + "\n"


def format_json(records: list[OutputRecord]) -> str:
    rows = [{
        "gamma": r.gamma, "beta0": r.beta0, "w": r.w, "rate": r.rate,
        "rate_asym": r.rate_asym, "ratio": r.ratio, "residual": r.residual,
    } for r in records]
    return json.dumps(rows, indent=2) + "\n"


def _tolerances(tol: float) -> ToleranceConfig:
    if tol <= 0:
        raise ValueError(f"--tol must be positive, got {tol}")
    return ToleranceConfig(quad_rel_tol=tol, sum_tail_tol=tol, root_rel_tol=tol,
                           series_rel_tol=min(1e-14, tol))


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the interface contract says 1."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="waveguide-rate",
                     description="Information rate of an ideal rectangular waveguide")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_sweep = sub.add_parser("sweep", help="rate over a gamma grid")
    p_sweep.add_argument("--gamma-min", type=float, required=True)
    p_sweep.add_argument("--gamma-max", type=float, required=True)
    p_sweep.add_argument("--points", type=int, default=50)
    p_sweep.add_argument("--spacing", choices=("log", "linear"), default="log")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--tol", type=float, default=1e-10)
    p_sweep.add_argument("--out", help="write the table here instead of stdout")
    p_sweep.add_argument("--plot", help="also render the sweep to this figure file")

    p_rate = sub.add_parser("rate", help="physical multimode rate in bits/s")
    p_rate.add_argument("--area", type=float, required=True, help="cross section, m^2")
    p_rate.add_argument("--power", type=float, required=True, help="average power, W")
    p_rate.add_argument("--method", choices=("exact", "asymptotic"), default="exact")
    p_rate.add_argument("--species", type=int, choices=(1, 2), default=2)
    p_rate.add_argument("--tol", type=float, default=1e-10)
    p_rate.add_argument("--out", help="write the report here instead of stdout")

    p_dir = sub.add_parser("single-direction", help="broadband one-direction rate")
    p_dir.add_argument("--power", type=float, required=True, help="average power, W")
    p_dir.add_argument("--theta", type=float, default=0.0, help="polar angle, rad")
    p_dir.add_argument("--species", type=int, choices=(1, 2), default=1)
    p_dir.add_argument("--tol", type=float, default=1e-10)
    p_dir.add_argument("--area", type=float, default=None,
                       help="accepted and ignored: the rate has no area dependence")
    p_dir.add_argument("--out", help="write the report here instead of stdout")

    p_verify = sub.add_parser("verify", help="run the numerical oracle suite")
    p_verify.add_argument("--tol", type=float, default=1e-9)
    p_verify.add_argument("--out", help="write the table here instead of stdout")

    return parser


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_sweep(args) -> int:
    try:
        spec = SweepSpec(args.gamma_min, args.gamma_max, args.points, args.spacing)
        tol = _tolerances(args.tol)
    except ValueError as exc:
        sys.stderr.write(f"waveguide-rate sweep: error: {exc}\n")
        return 1
    try:
        records = run_sweep(spec, tol)
    except SweepPointError as exc:
        sys.stderr.write(f"waveguide-rate sweep: {exc}\n")
        return 2
    text = format_csv(records) if args.format == "csv" else format_json(records)
    _emit(text, args.out)
    if args.plot:
        from .figures import render_sweep_figure
        render_sweep_figure(records, args.plot)
    return 0


def _cmd_rate(args) -> int:
    try:
        tol = _tolerances(args.tol)
        spec = PhysicalChannelSpec(
            geometry=ChannelGeometry(math.sqrt(args.area), math.sqrt(args.area)),
            power=args.power, species_count=args.species)
        gamma = gamma_of(spec)
        rate = rate_multimode_physical(spec, tol, method=args.method)
    except (ValueError, TruncationError, BracketingError) as exc:
        if isinstance(exc, ValueError):
            sys.stderr.write(f"waveguide-rate rate: error: {exc}\n")
            return 1
        sys.stderr.write(f"waveguide-rate rate: solver failure: {exc}\n")
        return 2
    lines = [
        f"gamma = {_fmt(gamma)}",
        f"method = {args.method}",
        f"species = {args.species}",
        f"rate_bits_per_s = {_fmt(rate)}",
    ]
    if gamma >= _ASYMPTOTIC_REGIME_GAMMA:
        lines.append("regime = high-power (gamma >= 100)")
    else:
        lines.append("regime = low-power (gamma < 100)")
        if args.method == "asymptotic":
            lines.append("warning = asymptotic closed form used outside its "
                         "high-power regime; prefer --method exact")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_single_direction(args) -> int:
    try:
        tol = _tolerances(args.tol)  # validated for interface consistency
        direction = DirectionSpec(theta=args.theta, species_count=args.species)
        if args.power <= 0:
            raise ValueError(f"power must be positive, got {args.power}")
    except ValueError as exc:
        sys.stderr.write(f"waveguide-rate single-direction: error: {exc}\n")
        return 1
    from .capacity import HBAR
    rate = rate_single_direction(args.power / HBAR, direction)
    lines = [
        f"theta_rad = {_fmt(args.theta)}",
        f"species = {args.species}",
        f"rate_bits_per_s = {_fmt(rate)}",
    ]
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_verify(args) -> int:
    try:
        if args.tol <= 0:
            raise ValueError(f"--tol must be positive, got {args.tol}")
    except ValueError as exc:
        sys.stderr.write(f"waveguide-rate verify: error: {exc}\n")
        return 1
    reports = default_suite(quad_tol=args.tol)
    name_w = max(len(r.name) for r in reports)
    lines = [f"{'oracle':<{name_w}}  {'computed':>24}  {'expected':>24}  "
             f"{'abs_error':>12}  {'bound':>10}  status"]
    failures = 0
    for r in reports:
        status = "ok" if r.passed else "FAIL"
        if not r.passed:
            failures += 1
        lines.append(f"{r.name:<{name_w}}  {r.computed:>24.17g}  "
                     f"{r.expected:>24.17g}  {r.abs_error:>12.3e}  "
                     f"{r.bound:>10.1e}  {status}")
    lines.append(f"{failures} failed / {len(reports)} oracles" if failures
                 else f"all {len(reports)} oracles passed")
    _emit("\n".join(lines) + "\n", args.out)
    return 3 if failures else 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    dispatch = {
        "sweep": _cmd_sweep,
        "rate": _cmd_rate,
        "single-direction": _cmd_single_direction,
        "verify": _cmd_verify,
    }
    return dispatch[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
