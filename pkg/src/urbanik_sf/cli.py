"""Command-line front end: density evaluation, tables, and the
certification suite, emitting versioned CSV or JSON for plots and CI.

Exit codes: 0 success / all checks pass, 1 check failure, 2 bad
arguments (including domain errors), with a machine-readable error
record on stderr-bound failures.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import diagnostics
from .density import DENSITY_SPEC, asympt_large, asympt_small, density
from .errors import UrbanikError
from .quadrature import QuadSpec

_CSV_HEADER = "# urbanik-sf v1"


@dataclass
class CommandConfig:
    subcommand: str
    c_values: list = field(default_factory=list)
    d_values: list = field(default_factory=list)
    t_values: list = field(default_factory=list)
    n_max: int = 4
    mode: str = "auto"
    fmt: str = "csv"
    out: str | None = None
    rel_tol: float | None = None
    truncations: list = field(default_factory=lambda: [1e2, 1e3, 1e4, 1e5, 1e6])


def _parse_t(values: list[str]) -> list[float]:
    """Scalars or 'start:stop:count' ranges (log-spaced by default)."""
    out: list[float] = []
    for v in values:
        if ":" in v:
            parts = v.split(":")
            if len(parts) not in (3, 4):
                raise ValueError("range spec is start:stop:count[:lin]")
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
            if count < 2:
                raise ValueError("range count must be >= 2")
            spacing = parts[3] if len(parts) == 4 else "log"
            if spacing == "lin":
                out.extend(np.linspace(start, stop, count).tolist())
            elif spacing == "log":
                if start <= 0:
                    raise ValueError("log range needs start > 0")
                out.extend(np.geomspace(start, stop, count).tolist())
            else:
                raise ValueError("spacing must be 'log' or 'lin'")
        else:
            out.append(float(v))
    if any(not (t > 0 and math.isfinite(t)) for t in out):
        raise ValueError("t values must be positive and finite")
    return out


def _f15(x: float) -> str:
    return f"{x:.15g}"


def _spec(config: CommandConfig) -> QuadSpec:
    if config.rel_tol is None:
        return DENSITY_SPEC
    return QuadSpec(1e-200, config.rel_tol, DENSITY_SPEC.max_nodes)


def _emit(config: CommandConfig, columns: list[str], rows: list[list]) -> None:
    if config.fmt == "csv":
        lines = [_CSV_HEADER, ",".join(columns)]
        for row in rows:
            lines.append(
                ",".join(_f15(v) if isinstance(v, float) else str(v) for v in row)
            )
        text = "\n".join(lines) + "\n"
    else:
        records = [
            {k: (float(_f15(v)) if isinstance(v, float) else v)
             for k, v in zip(columns, row)}
            for row in rows
        ]
        text = json.dumps({"schema": 1, "records": records}, sort_keys=True,
                          separators=(", ", ": ")) + "\n"
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_DENSITY_COLS = ["c", "t", "value", "abs_err_estimate", "method", "log_value"]


def _density_row(c: float, t: float, spec: QuadSpec) -> list:
    d = density(c, t, spec)
    return [d.c, d.t, d.value, d.abs_err_estimate, d.method.value, d.log_value]


def _cmd_eval(config: CommandConfig) -> int:
    spec = _spec(config)
    rows = [_density_row(c, t, spec) for c in config.c_values for t in config.t_values]
    _emit(config, _DENSITY_COLS, rows)
    return 0


def _cmd_table(config: CommandConfig) -> int:
    return _cmd_eval(config)


def _cmd_moments(config: CommandConfig) -> int:
    reports = [
        diagnostics.check_moment(c, n)
        for c in config.c_values
        for n in range(config.n_max + 1)
    ]
    _emit_reports(config, reports)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_semigroup(config: CommandConfig) -> int:
    if not config.d_values:
        raise ValueError("semigroup needs --d")
    reports = [
        diagnostics.check_semigroup(c, d, t)
        for c, d in zip(config.c_values, config.d_values)
        for t in config.t_values
    ]
    _emit_reports(config, reports)
    return 0 if all(r.passed for r in reports) else 1


def _cmd_krein(config: CommandConfig) -> int:
    columns = ["c", "T", "partial_integral", "classification", "decade_ratio"]
    rows = []
    for c in config.c_values:
        trace = diagnostics.krein_integral(c, tuple(config.truncations))
        for T, partial in zip(trace.truncations, trace.partials):
            rows.append([c, T, partial, trace.classification, trace.decade_ratio])
    _emit(config, columns, rows)
    return 0


ASYMPT_COLUMNS = ["c", "t", "density", "asymptotic", "ratio", "scaled_residual",
                  "mode", "method", "abs_err_estimate"]


def emit_asympt_ratio_table(c_values, t_values, mode: str = "auto",
                            spec: QuadSpec = DENSITY_SPEC) -> list[list]:
    """Rows (c, t, density, asymptotic, ratio, scaled_residual, ...).

    The scaled residual is (ratio-1) t^{1/c} in the large-t regime and
    (ratio-1) log(1/t) in the small-t regime; boundedness of that column
    across a grid is the numeric witness of the leading-order error
    terms.  Ratios are formed in log space so they survive underflow.
    """
    rows = []
    for c in c_values:
        for t in t_values:
            row_mode = ("large" if t >= 1.0 else "small") if mode == "auto" else mode
            d = density(c, t, spec)
            a = asympt_large(c, t) if row_mode == "large" else asympt_small(c, t)
            ratio = math.exp(d.log_value - a.log_value)
            scale = t ** (1.0 / c) if row_mode == "large" else -math.log(t)
            rows.append([float(c), float(t), d.value, a.value, ratio,
                         (ratio - 1.0) * scale, row_mode, d.method.value,
                         d.abs_err_estimate])
    return rows


def _cmd_asympt(config: CommandConfig) -> int:
    rows = emit_asympt_ratio_table(
        config.c_values, config.t_values, config.mode, _spec(config)
    )
    _emit(config, ASYMPT_COLUMNS, rows)
    return 0


def _cmd_verify_all(config: CommandConfig) -> int:
    reports = diagnostics.run_all()
    _emit_reports(config, reports)
    return 0 if all(r.passed for r in reports) else 1


def _emit_reports(config: CommandConfig, reports) -> None:
    if config.fmt == "json":
        text = diagnostics.reports_to_json(reports) + "\n"
    else:
        text = diagnostics.reports_to_csv(reports)
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


_COMMANDS = {
    "eval": _cmd_eval,
    "table": _cmd_table,
    "moments": _cmd_moments,
    "semigroup": _cmd_semigroup,
    "krein": _cmd_krein,
    "asympt": _cmd_asympt,
    "verify-all": _cmd_verify_all,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="urbanik-sf",
        description="Evaluate the product-convolution semigroup densities "
        "e_c(t) and certify their numerically checkable properties.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, need_t=True):
        p.add_argument("--c", action="append", type=float, required=True,
                       help="order c > 0 (repeatable)")
        if need_t:
            p.add_argument("--t", action="append", default=None,
                           help="t > 0 scalar or start:stop:count[:lin] range "
                           "(log-spaced default; repeatable)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--rel-tol", type=float, default=None,
                       help="override evaluation relative tolerance")

    p = sub.add_parser("eval", help="evaluate e_c(t) at given points")
    common(p)
    p = sub.add_parser("table", help="alias of eval for grid emission")
    common(p)
    p = sub.add_parser("moments", help="moment checks against (n!)^c")
    common(p, need_t=False)
    p.add_argument("--n-max", type=int, default=4)
    p = sub.add_parser("semigroup", help="product-convolution checks")
    common(p)
    p.add_argument("--d", action="append", type=float, required=True,
                   help="second order d > 0, paired with --c")
    p = sub.add_parser("krein", help="Krein criterion partial integrals")
    common(p, need_t=False)
    p.add_argument("--truncation", action="append", type=float, default=None,
                   help="truncation point (repeatable; default 1e2..1e6)")
    p = sub.add_parser("asympt", help="density vs asymptotic ratio table")
    common(p)
    p.add_argument("--mode", choices=("auto", "large", "small"), default="auto")
    p = sub.add_parser("verify-all", help="run the full certification suite")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    return parser


def config_from_args(args: argparse.Namespace) -> CommandConfig:
    config = CommandConfig(subcommand=args.subcommand)
    config.fmt = getattr(args, "format", "csv")
    config.out = getattr(args, "out", None)
    config.rel_tol = getattr(args, "rel_tol", None)
    if config.rel_tol is not None and not config.rel_tol > 0:
        raise ValueError("--rel-tol must be positive")
    cs = getattr(args, "c", None)
    if cs is not None:
        if any(not (c > 0 and math.isfinite(c)) for c in cs):
            raise ValueError("--c values must be positive and finite")
        config.c_values = cs
    ds = getattr(args, "d", None)
    if ds is not None:
        if any(not (d > 0 and math.isfinite(d)) for d in ds):
            raise ValueError("--d values must be positive and finite")
        if len(ds) != len(config.c_values):
            raise ValueError("--d must be given once per --c")
        config.d_values = ds
    ts = getattr(args, "t", None)
    if ts is not None:
        config.t_values = _parse_t(ts)
    elif args.subcommand in ("eval", "table", "semigroup", "asympt"):
        raise ValueError(f"{args.subcommand} needs --t")
    config.n_max = getattr(args, "n_max", 4)
    if not 0 <= config.n_max <= 8:
        raise ValueError("--n-max must be in [0, 8]")
    config.mode = getattr(args, "mode", "auto")
    trunc = getattr(args, "truncation", None)
    if trunc:
        config.truncations = sorted(float(T) for T in trunc)
    return config


def run(config: CommandConfig) -> int:
    """Execute one parsed command; returns the process exit code."""
    return _COMMANDS[config.subcommand](config)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except ValueError as exc:
        sys.stderr.write(json.dumps({"schema": 1, "error": str(exc)}) + "\n")
        return 2
    try:
        return run(config)
    except (UrbanikError, ValueError) as exc:
        sys.stderr.write(
            json.dumps({"schema": 1, "error": str(exc),
                        "type": type(exc).__name__}) + "\n"
        )
        return 2


if __name__ == "__main__":
    sys.exit(main())
