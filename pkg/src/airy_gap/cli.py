"""Command-line front end: determinant, comparison, statistics, model-solution
verification, and sweep jobs with JSON reports and CSV tables.

Reports are deterministic: identical inputs give byte-identical payloads,
with wall-clock timing kept in a separate `timing_seconds` field that
consumers are expected to ignore when comparing runs.  Exit codes: 0 success,
2 validation error, 3 I/O error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__, asymptotics, fredholm, parametrix
from .fredholm import GapConfig
from .specfun import NumericalError

SCHEMA_VERSION = "airy-gap-report/1"

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3
EXIT_NUMERICAL = 4


class ValidationError(ValueError):
    """Bad user input (config file, flag combination, parameter range)."""


@dataclass
class RunReport:
    """Uniform result envelope every subcommand emits."""

    command: str
    config: dict
    results: list = field(default_factory=list)
    convergence: list = field(default_factory=list)
    timing_seconds: float = 0.0
    schema_version: str = SCHEMA_VERSION

    def add(self, label: str, value: float) -> None:
        value = float(value)
        if not math.isfinite(value):
            raise NumericalError(f"non-finite result for {label!r}")
        self.results.append({"label": label, "value": value})

    def to_json(self) -> str:
        payload = {
            "schema_version": self.schema_version,
            "command": self.command,
            "config": self.config,
            "results": self.results,
            "convergence": self.convergence,
            "timing_seconds": self.timing_seconds,
        }
        return json.dumps(payload, sort_keys=True, indent=2)


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def write_csv(path: str, header: list, rows: list) -> None:
    """RFC-4180-style CSV, '.' decimal separator, 17 significant digits."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, (int, float, np.floating)) else str(v)
                              for v in row))
    try:
        with open(path, "w", newline="") as fh:
            fh.write("\r\n".join(lines) + "\r\n")
    except OSError as exc:
        raise IOError(f"cannot write {path}: {exc}") from exc


def parse_imag(text: str) -> complex:
    """Parse a purely imaginary parameter like '0.3i', '-0.25j' or '0.3'.

    A bare real number is taken as the imaginary part.
    """
    s = text.strip().lower().replace("i", "j")
    try:
        if s.endswith("j"):
            value = complex(s)
        else:
            value = complex(0.0, float(s))
    except ValueError as exc:
        raise ValidationError(f"cannot parse imaginary parameter {text!r}") from exc
    if abs(value.real) > 1e-12 * max(1.0, abs(value.imag)):
        raise ValidationError(f"parameter {text!r} must be purely imaginary")
    return complex(0.0, value.imag)


def thread_count() -> int:
    """Worker count for sweeps; AIRY_GAP_THREADS overrides the machine default."""
    env = os.environ.get("AIRY_GAP_THREADS")
    if env is None:
        return os.cpu_count() or 1
    try:
        n = int(env)
    except ValueError as exc:
        raise ValidationError(f"AIRY_GAP_THREADS must be an integer, got {env!r}") from exc
    if n < 1:
        raise ValidationError("AIRY_GAP_THREADS must be >= 1")
    return n


# ---------------------------------------------------------------------------
# config files
# ---------------------------------------------------------------------------

def load_config(path: str) -> dict:
    """Problem description: {x, s} and/or {tau, r, s|beta}.

    x must equal r*tau when both parametrizations are present.  beta entries
    are strings parsed by parse_imag; exactly one of s/beta is required.
    """
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise IOError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config {path} is not valid JSON (line {exc.lineno}): {exc.msg}") from exc
    if not isinstance(raw, dict):
        raise ValidationError("config must be a JSON object")

    known = {"m", "x", "s", "tau", "r", "beta"}
    unknown = set(raw) - known
    if unknown:
        raise ValidationError(f"unknown config fields: {sorted(unknown)}")

    out: dict = {}
    if "tau" in raw:
        tau = [float(v) for v in raw["tau"]]
        if any(v >= 0 for v in tau) or any(b >= a for a, b in zip(tau, tau[1:])):
            raise ValidationError("tau must be negative and strictly decreasing")
        out["tau"] = tau
    if "x" in raw:
        x = [float(v) for v in raw["x"]]
        if any(b >= a for a, b in zip(x, x[1:])):
            raise ValidationError("endpoints must be strictly decreasing")
        out["x"] = x
    if "r" in raw:
        r = float(raw["r"])
        if r <= 0:
            raise ValidationError("r must be positive")
        out["r"] = r
    if "x" not in out and "tau" in out and "r" in out:
        out["x"] = [out["r"] * t for t in out["tau"]]
    if "x" in out and "tau" in out and "r" in out:
        expect = [out["r"] * t for t in out["tau"]]
        if any(abs(a - b) > 1e-9 * max(1.0, abs(b)) for a, b in zip(out["x"], expect)):
            raise ValidationError("x and r*tau disagree; drop one parametrization")

    if ("s" in raw) == ("beta" in raw):
        raise ValidationError("config needs exactly one of 's' or 'beta'")
    if "s" in raw:
        out["s"] = [float(v) for v in raw["s"]]
    else:
        betas = [parse_imag(str(v)) for v in raw["beta"]]
        out["beta"] = [v.imag for v in betas]
        out["s"] = list(asymptotics.s_from_beta(betas))

    n = len(out["s"])
    for key in ("x", "tau"):
        if key in out and len(out[key]) != n:
            raise ValidationError(f"{key} and s must have equal length")
    if "m" in raw and int(raw["m"]) != n:
        raise ValidationError(f"declared m = {raw['m']} does not match length {n}")
    out["m"] = n
    return out


def _gap_config(cfg: dict) -> GapConfig:
    if "x" not in cfg:
        raise ValidationError("config needs endpoints: give 'x' or both 'tau' and 'r'")
    try:
        return GapConfig(cfg["x"], cfg["s"])
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_det(args) -> RunReport:
    cfg = load_config(args.config)
    gap = _gap_config(cfg)
    report = RunReport("det", cfg)
    det = fredholm.log_det(gap, nodes_per_panel=args.nodes,
                           tail_length=args.tail, refine=args.refine)
    report.add("log_f", det.log_f)
    report.add("est_error", det.est_error)
    report.add("converged", 1.0 if det.converged else 0.0)
    report.convergence = [[int(n), float(v)] for n, v in det.resolutions]
    return report


def _compare_row(tau, s, r, nodes):
    x = tuple(r * t for t in tau)
    if s[0] == 0.0:
        gap = GapConfig(x, s)
        numeric = fredholm.log_E0(gap, nodes_per_panel=nodes)
        beta0 = asymptotics.beta_from_s(s)
        total = asymptotics.log_E0_asym(x, beta0).total
    else:
        gap = GapConfig(x, s)
        numeric = fredholm.log_E(gap, nodes_per_panel=nodes)
        total = asymptotics.log_E_asym(x, asymptotics.beta_from_s(s)).total
    diff = abs(numeric - total)
    scaled = diff * r ** 1.5 / math.log(r) if r > 1 else float("nan")
    return [r, numeric, total, diff, scaled]


def cmd_compare(args) -> RunReport:
    cfg = load_config(args.config)
    if "tau" not in cfg:
        raise ValidationError("compare needs a tau-parametrized config")
    rs = [float(v) for v in args.r_list.split(",") if v.strip()]
    if not rs:
        raise ValidationError("empty r list")
    if any(b <= a for a, b in zip(rs, rs[1:])) or len(rs) != len(set(rs)):
        raise ValidationError("r list must be strictly ascending")
    rows = [_compare_row(cfg["tau"], cfg["s"], r, args.nodes) for r in rs]
    report = RunReport("compare", cfg)
    for row in rows:
        report.add(f"gap_r_{_fmt(row[0])}", row[3])
    gaps = [row[3] for row in rows]
    report.add("gap_monotone_decreasing",
               1.0 if all(b < a for a, b in zip(gaps, gaps[1:])) else 0.0)
    report.add("gap_final", gaps[-1])
    if args.out:
        write_csv(args.out, ["r", "log_numeric", "log_asymptotic", "gap", "gap_r32_over_logr"], rows)
    return report


def cmd_stats(args) -> RunReport:
    if (args.x is None) == (args.interval is None):
        raise ValidationError("give exactly one of --x or --interval")
    report = RunReport("stats", {"x": args.x, "interval": args.interval})
    nodes = args.nodes
    if args.x is not None:
        x = float(args.x)
        if x >= 0:
            raise ValidationError("--x must be negative")
        mean_n = fredholm.mean_count([(x, math.inf)], nodes)
        var_n = fredholm.var_count([(x, math.inf)], nodes)
        mean_a, var_a = asymptotics.moment_asym(x)
        report.add("mean_numeric", mean_n)
        report.add("mean_asymptotic", mean_a)
        report.add("mean_gap", abs(mean_n - mean_a))
        report.add("var_numeric", var_n)
        report.add("var_asymptotic", var_a)
        report.add("var_gap", abs(var_n - var_a))
        return report
    a, b = (float(v) for v in args.interval)
    if not a < b < 0:
        raise ValidationError("--interval expects a < b < 0")
    var_n = fredholm.var_count([(a, b)], nodes)
    report.add("interval_var_numeric", var_n)
    # interval (a, b) = (r*tau2, r*tau1) with r = |b| and tau1 = -1
    r = abs(b)
    var_a = asymptotics.var_interval_asym(r, b / r, a / r)
    report.add("interval_var_asymptotic", var_a)
    report.add("interval_var_gap", abs(var_n - var_a))
    mid = 0.5 * (a + b)
    additivity = abs(var_n - fredholm.var_count([(a, mid)], nodes)
                     - fredholm.var_count([(mid, b)], nodes)
                     - 2.0 * fredholm.cov_count([(a, mid)], [(mid, b)], nodes))
    report.add("additivity_residual", additivity)
    cov_n = fredholm.cov_halflines(b, a, nodes)
    cov_a = asymptotics.sigma_cov(b, a)
    report.add("halfline_cov_numeric", cov_n)
    report.add("halfline_cov_asymptotic", cov_a)
    report.add("halfline_cov_gap", abs(cov_n - cov_a))
    return report


_PARAMETRIX_RADII = (1.0, 3.0)
_DET_SAMPLE_POINTS = (0.5, 2.0, 8.0)


def cmd_parametrix(args) -> RunReport:
    model = args.model
    beta = None
    if model == "chg":
        if args.beta is None:
            raise ValidationError("--beta is required for the chg model")
        beta = parse_imag(args.beta)
        if abs(beta) > parametrix.CHG_MAX_BETA:
            raise ValidationError(f"|beta| must be <= {parametrix.CHG_MAX_BETA}")
    elif args.beta is not None:
        raise ValidationError("--beta only applies to the chg model")
    report = RunReport("parametrix", {"model": model, "beta": args.beta})

    rays = {"airy": parametrix.AIRY_RAYS.keys(),
            "bessel": parametrix.BESSEL_RAYS.keys(),
            "chg": range(1, 7)}[model]
    worst_jump = 0.0
    for ray in rays:
        for t in _PARAMETRIX_RADII:
            res = parametrix.jump_residual(model, ray, t, beta)
            report.add(f"jump_ray{ray}_t{_fmt(t)}", res)
            worst_jump = max(worst_jump, res)
    report.add("jump_max", worst_jump)

    phi = {"airy": parametrix.phi_ai, "bessel": parametrix.phi_be,
           "chg": lambda z: parametrix.phi_hg(z, beta)}[model]
    worst_det = 0.0
    for r in _DET_SAMPLE_POINTS:
        for theta in (0.9, 2.1, -1.2, -2.6):
            worst_det = max(worst_det, phi(r * cmath.exp(1j * theta)).det_residual)
    report.add("det_max", worst_det)

    fitted = parametrix.extract_asym_coeff(model, beta)
    reference = {"airy": parametrix.PHI_AI_1, "bessel": parametrix.PHI_BE_1,
                 "chg": parametrix.phi_hg1_reference(beta) if beta is not None else None}[model]
    report.add("coeff_error", float(np.abs(fitted - reference).max()))
    if model == "chg":
        report.add("logderivative_error",
                   abs(parametrix.hg_logderivative_limit(beta)
                       - parametrix.hg_logderivative_exact(beta)))
    return report


_SWEEP_FIELDS = ("r", "nodes")  # plus beta_<j> and s_<j>


def _sweep_one(cfg: dict, f: str, value: float, nodes: int):
    if f == "nodes":
        gap = _gap_config(cfg)
        det = fredholm.log_det(gap, nodes_per_panel=int(value), refine=1)
        return [int(value), det.log_f, det.est_error]
    if f == "r":
        if "tau" not in cfg:
            raise ValidationError("sweeping r needs a tau-parametrized config")
        return _compare_row(cfg["tau"], cfg["s"], float(value), nodes)
    kind, _, idx = f.partition("_")
    j = int(idx) - 1
    s = list(cfg["s"])
    if kind == "s":
        s[j] = float(value)
    else:
        betas = list(asymptotics.beta_from_s(s))
        if cfg["s"][0] == 0.0:
            raise ValidationError("beta sweep needs s_1 > 0")
        betas[j] = complex(0.0, float(value))
        s = list(asymptotics.s_from_beta(betas))
    sub = dict(cfg)
    sub["s"] = s
    gap = _gap_config(sub)
    det = fredholm.log_det(gap, nodes_per_panel=nodes, refine=1)
    row = [float(value), det.log_f]
    if all(v > 0 for v in s):
        row.append(asymptotics.log_E_asym(sub["x"], asymptotics.beta_from_s(s)).total)
        row.append(abs(det.log_f - row[-1]))
    else:
        row += [float("nan"), float("nan")]
    return row


def cmd_sweep(args) -> RunReport:
    cfg = load_config(args.config)
    f = args.vary
    base = f.split("_")[0]
    if f not in _SWEEP_FIELDS and base not in ("beta", "s"):
        raise ValidationError(f"--vary must be one of r, nodes, s_<j>, beta_<j>; got {f!r}")
    if base in ("beta", "s"):
        try:
            j = int(f.split("_")[1])
        except (IndexError, ValueError) as exc:
            raise ValidationError(f"malformed field {f!r}; use e.g. s_2") from exc
        if not 1 <= j <= cfg["m"]:
            raise ValidationError(f"index in {f!r} out of range for m = {cfg['m']}")
    values = [float(v) for v in args.values.split(",") if v.strip()]
    if not values:
        raise ValidationError("empty values list")

    workers = thread_count()
    if workers > 1 and len(values) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda v: _sweep_one(cfg, f, v, args.nodes), values))
    else:
        rows = [_sweep_one(cfg, f, v, args.nodes) for v in values]

    header = {
        "nodes": ["nodes", "log_f", "est_error"],
        "r": ["r", "log_numeric", "log_asymptotic", "gap", "gap_r32_over_logr"],
    }.get(f, [f, "log_f", "log_asymptotic", "gap"])
    write_csv(args.out, header, rows)
    report = RunReport("sweep", cfg)
    report.add("rows", float(len(rows)))
    return report


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="airy-gap",
        description="Airy-kernel Fredholm determinants with jump discontinuities: "
                    "numerics, large-gap expansions, counting statistics, and "
                    "model Riemann-Hilbert solution checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", default=None, metavar="PATH",
                        help="also write the JSON report to this file")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=argparse.ArgumentParser)

    p = sub.add_parser("det", help="log Fredholm determinant with refinement report",
                       parents=[common])
    p.add_argument("config")
    p.add_argument("--nodes", type=int, default=fredholm.DEFAULT_NODES_PER_PANEL)
    p.add_argument("--tail", type=float, default=None)
    p.add_argument("--refine", type=int, default=2)
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("compare", help="numeric vs asymptotic log determinant over r",
                       parents=[common])
    p.add_argument("config")
    p.add_argument("--r-list", required=True)
    p.add_argument("--nodes", type=int, default=fredholm.DEFAULT_NODES_PER_PANEL)
    p.add_argument("--out", default=None, help="optional CSV path")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("stats", help="counting-statistics traces vs expansions",
                       parents=[common])
    p.add_argument("--x", type=float, default=None)
    p.add_argument("--interval", nargs=2, metavar=("A", "B"), default=None)
    p.add_argument("--nodes", type=int, default=fredholm.DEFAULT_NODES_PER_PANEL)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("parametrix", help="verify a model Riemann-Hilbert solution",
                       parents=[common])
    p.add_argument("--model", required=True, choices=("airy", "bessel", "chg"))
    p.add_argument("--beta", default=None)
    p.set_defaults(func=cmd_parametrix)

    p = sub.add_parser("sweep", help="CSV table over one varying field",
                       parents=[common])
    p.add_argument("config")
    p.add_argument("--vary", required=True)
    p.add_argument("--values", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--nodes", type=int, default=fredholm.DEFAULT_NODES_PER_PANEL)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except (ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    report.timing_seconds = time.perf_counter() - start
    out = report.to_json()
    if args.json is not None:
        try:
            with open(args.json, "w") as fh:
                fh.write(out + "\n")
        except OSError as exc:
            print(f"i/o error: {exc}", file=sys.stderr)
            return EXIT_IO
    print(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
