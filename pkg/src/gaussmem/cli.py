"""Command-line experiment runner.

Subcommands: ``rate`` (single operating point), ``sweep-r`` (rate maximized
over the correlation at each squeezing value), ``sweep-n`` (jointly
optimized rate versus number of uses), ``feasible`` (feasibility bounds),
``validate`` (Monte Carlo and dual-solver self checks).

Sweep data is written as CSV with a ``#``-prefixed metadata block embedding
the fully resolved configuration; single-point commands emit one JSON
object. Numeric parsing accepts plain decimals and simple fractions like
``2/3`` and is locale independent. ``GAUSSMEM_OUTDIR`` sets the directory
for relative output paths.
"""

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import __version__
from ._backend import active_backend
from .channel import (
    AUTO,
    ChannelParams,
    InputParams,
    averaged_output_covariance,
    modulation_diag_slack,
    noise_diag_slack,
    residual_budget,
)
from .entropy import gaussian_entropy, transmission_rate
from .errors import GaussmemError
from .montecarlo import (
    covariance_standard_errors,
    empirical_covariance,
    random_physical_covariance,
    sample_output_displacements,
)
from .optimize import feasible_region, sweep_n, sweep_r
from .symplectic import (
    BlockCovariance,
    generic_symplectic_eigenvalues,
    symplectic_eigenvalues,
)

OUTDIR_ENV = "GAUSSMEM_OUTDIR"

FIG_MEMORIES = (0.0, 0.1, 0.2)
FIG_USES = (2, 3, 4, 5)


def _parse_number(text: str) -> float:
    """Parse a decimal or a simple fraction such as ``2/3`` exactly."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        return float(num) / float(den)
    return float(text)


def _parse_regulator(text: str):
    text = text.strip().lower()
    if text == AUTO:
        return AUTO
    return _parse_number(text)


def _add_common(parser: argparse.ArgumentParser, *, sweep: bool) -> None:
    if sweep:
        parser.add_argument("--n", action="append", type=int, default=None,
                            help="channel uses; repeatable (default: 2 3 4 5)")
        parser.add_argument("--memory", action="append", type=_parse_number, default=None,
                            help="memory degree s; repeatable (default: 0 0.1 0.2)")
    else:
        parser.add_argument("--n", type=int, default=2, help="channel uses (default 2)")
        parser.add_argument("--memory", type=_parse_number, default=0.0,
                            help="memory degree s (default 0)")
    parser.add_argument("--nbar", type=_parse_number, default=2.0,
                        help="photon budget per mode (default 2)")
    parser.add_argument("--noise", type=_parse_number, default=2.0 / 3.0,
                        help="added thermal photons N per mode; accepts '2/3' (default 2/3)")
    parser.add_argument("--epsilon", type=_parse_regulator, default=AUTO,
                        help="noise positivity regulator: 'auto' or a value")
    parser.add_argument("--theta", type=_parse_regulator, default=AUTO,
                        help="modulation positivity regulator: 'auto' or a value")
    parser.add_argument("--r-grid", type=int, default=65,
                        help="grid points for squeezing searches/axes (default 65)")
    parser.add_argument("--y-grid", type=int, default=129,
                        help="grid points for correlation searches (default 129)")
    parser.add_argument("--n-max-guard", type=int, default=12,
                        help="refuse computations beyond this many uses (default 12)")
    parser.add_argument("--out", default=None, help="output file (default: stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default=None,
                        help="output format (default: csv for sweeps, json otherwise)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaussmem",
        description="Transmission rates of a Gaussian channel with correlated additive noise.",
    )
    parser.add_argument("--version", action="version", version=f"gaussmem {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_rate = sub.add_parser("rate", help="rate at one operating point")
    _add_common(p_rate, sweep=False)
    p_rate.add_argument("--r", type=_parse_number, default=0.0, help="squeezing strength")
    p_rate.add_argument("--y", type=_parse_number, default=0.0, help="modulation correlation")

    p_sr = sub.add_parser("sweep-r", help="rate maximized over y, versus squeezing")
    _add_common(p_sr, sweep=True)

    p_sn = sub.add_parser("sweep-n", help="jointly optimized rate versus channel uses")
    _add_common(p_sn, sweep=True)

    p_feas = sub.add_parser("feasible", help="feasibility bounds for a channel")
    _add_common(p_feas, sweep=False)
    p_feas.add_argument("--r", type=_parse_number, default=0.0,
                        help="squeezing at which to report the correlation bound")

    p_val = sub.add_parser("validate", help="Monte Carlo and dual-solver self checks")
    _add_common(p_val, sweep=False)
    p_val.add_argument("--r", type=_parse_number, default=0.1, help="squeezing strength")
    p_val.add_argument("--y", type=_parse_number, default=0.2, help="modulation correlation")
    p_val.add_argument("--samples", type=int, default=200_000, help="Monte Carlo sample count")
    p_val.add_argument("--seed", type=int, default=2026, help="Monte Carlo seed")
    return parser


def _guard_n(values, guard: int) -> None:
    for n in values:
        if n > guard:
            raise GaussmemError(
                f"n = {n} exceeds the configured guard ({guard}); "
                "raise --n-max-guard explicitly if you really want this"
            )
        if n < 1:
            raise GaussmemError(f"n must be >= 1, got {n}")


def _config_dict(args, extra=None) -> dict:
    skip = {"command", "func", "out", "format"}
    cfg = {k: v for k, v in vars(args).items() if k not in skip}
    cfg["format"] = args.format
    cfg["out"] = args.out
    cfg["backend"] = active_backend()
    cfg["version"] = __version__
    if extra:
        cfg.update(extra)
    return cfg


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        value = float(obj)
        if value == float("inf"):
            return "unbounded"
        return value
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _write_output(text: str, out_path) -> None:
    if out_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not os.path.isabs(out_path):
        out_path = os.path.join(outdir, out_path)
    os.makedirs(os.path.dirname(os.path.abspath(out_path)), exist_ok=True)
    with open(out_path, "w", newline="") as handle:
        handle.write(text)


def _emit_json(report: dict, args) -> None:
    if args.format == "csv":
        raise GaussmemError(f"the {args.command} command emits a single JSON object; use --format json")
    _write_output(json.dumps(_jsonable(report), indent=2), args.out)


def _sweep_text(config: dict, header, rows, fmt) -> str:
    if fmt == "json":
        return json.dumps(_jsonable({"config": config, "columns": list(header), "rows": rows}), indent=2)
    buf = io.StringIO()
    for key in sorted(config):
        buf.write(f"# {key} = {_jsonable(config[key])}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def cmd_rate(args) -> int:
    _guard_n([args.n], args.n_max_guard)
    channel = ChannelParams.create(args.n, args.noise, args.memory, args.epsilon)
    input_params = InputParams.create(args.n, args.nbar, args.r, args.y, args.theta)
    result = transmission_rate(channel, input_params)
    budget = residual_budget(args.n, args.nbar, args.r)
    report = {
        "command": "rate",
        "config": _config_dict(args, {
            "epsilon_resolved": channel.epsilon,
            "theta_resolved": input_params.theta,
        }),
        "rate_bits": result.rate,
        "squeezed_photons": result.squeezed_photons,
        "residual_budget": budget,
        "out_spectrum": result.out_spectrum.values,
        "avg_spectrum": result.avg_spectrum.values,
        "clamped_values": {
            "out": result.out_spectrum.clamped,
            "avg": result.avg_spectrum.clamped,
        },
        "feasibility_slack": {
            "noise_diagonal": noise_diag_slack(channel),
            "modulation_diagonal": modulation_diag_slack(args.n, input_params),
            "photon_budget": budget,
        },
    }
    _emit_json(report, args)
    return 0


def cmd_feasible(args) -> int:
    _guard_n([args.n], args.n_max_guard)
    channel = ChannelParams.create(args.n, args.noise, args.memory, args.epsilon)
    region = feasible_region(channel, args.nbar, theta=args.theta)
    report = {
        "command": "feasible",
        "config": _config_dict(args, {"epsilon_resolved": channel.epsilon}),
        "r_max": region.r_max,
        "s_max": region.s_max,
        "y_max_at_r": {"r": args.r, "y_max": region.y_max(args.r)},
    }
    _emit_json(report, args)
    return 0


def _sweep_channels(args):
    uses = args.n if args.n else list(FIG_USES)
    memories = args.memory if args.memory is not None else list(FIG_MEMORIES)
    _guard_n(uses, args.n_max_guard)
    return uses, memories


def cmd_sweep_r(args) -> int:
    uses, memories = _sweep_channels(args)
    rows = []
    for n in uses:
        channels = [ChannelParams.create(n, args.noise, s, args.epsilon) for s in memories]
        region = feasible_region(channels[0], args.nbar, theta=args.theta)
        r_values = np.linspace(0.0, region.r_max, args.r_grid)
        result = sweep_r(channels, args.nbar, r_values,
                         theta=args.theta, y_grid_points=args.y_grid)
        for pt in result.points:
            rows.append((pt.memory, pt.n, pt.squeezing, pt.correlation, pt.rate))
    config = _config_dict(args, {
        "n_list": uses,
        "memory_list": memories,
        "epsilon_resolved": ChannelParams.create(uses[0], args.noise, 0.0, args.epsilon).epsilon,
        "r_axis": "linspace(0, r_max(n), r_grid) per n",
    })
    _write_output(_sweep_text(config, ("s", "n", "r", "y_opt", "rate"), rows,
                              args.format or "csv"), args.out)
    return 0


def cmd_sweep_n(args) -> int:
    uses, memories = _sweep_channels(args)
    rows = []
    for s in memories:
        template = ChannelParams.create(uses[0], args.noise, s, args.epsilon)
        result = sweep_n(template, args.nbar, uses, theta=args.theta,
                         r_grid_points=args.r_grid, y_grid_points=args.y_grid)
        for pt in result.points:
            rows.append((pt.memory, pt.n, pt.squeezing, pt.correlation, pt.rate))
    config = _config_dict(args, {
        "n_list": uses,
        "memory_list": memories,
        "epsilon_resolved": ChannelParams.create(uses[0], args.noise, 0.0, args.epsilon).epsilon,
    })
    _write_output(_sweep_text(config, ("s", "n", "r_opt", "y_opt", "rate"), rows,
                              args.format or "csv"), args.out)
    return 0


def cmd_validate(args) -> int:
    _guard_n([args.n], args.n_max_guard)
    channel = ChannelParams.create(args.n, args.noise, args.memory, args.epsilon)
    input_params = InputParams.create(args.n, args.nbar, args.r, args.y, args.theta)

    analytic = averaged_output_covariance(channel, input_params)
    batch = sample_output_displacements(channel, input_params, args.samples, args.seed)
    empirical = empirical_covariance(batch)
    se = covariance_standard_errors(analytic.full(), args.samples)
    deviation = np.abs(empirical - analytic.full())
    max_sigma = float(np.max(deviation / np.maximum(se, 1e-300)))
    n = channel.n
    emp_q = 0.5 * (empirical[:n, :n] + empirical[:n, :n].T)
    emp_p = 0.5 * (empirical[n:, n:] + empirical[n:, n:].T)
    entropy_emp = gaussian_entropy(BlockCovariance(emp_q, emp_p))
    entropy_ana = gaussian_entropy(analytic)
    mc_cov_ok = max_sigma <= 5.0
    mc_ent_ok = abs(entropy_emp - entropy_ana) <= 0.02

    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(200):
        dim = int(rng.integers(1, 9))
        cov = random_physical_covariance(dim, rng)
        a = symplectic_eigenvalues(cov).values
        b = generic_symplectic_eigenvalues(cov).values
        worst = max(worst, float(np.max(np.abs(a - b))))
    dual_ok = worst < 1e-10

    checks = [
        {"name": "mc_covariance_entrywise_5se", "passed": mc_cov_ok,
         "max_sigma": max_sigma, "samples": args.samples},
        {"name": "mc_entropy_within_0.02_bits", "passed": mc_ent_ok,
         "empirical_bits": entropy_emp, "analytic_bits": entropy_ana},
        {"name": "symplectic_dual_method_1e-10", "passed": dual_ok,
         "max_deviation": worst, "cases": 200},
    ]
    report = {
        "command": "validate",
        "config": _config_dict(args, {
            "epsilon_resolved": channel.epsilon,
            "theta_resolved": input_params.theta,
            "generator": batch.generator,
        }),
        "checks": checks,
        "passed": all(c["passed"] for c in checks),
    }
    _emit_json(report, args)
    return 0 if report["passed"] else 1


_COMMANDS = {
    "rate": cmd_rate,
    "feasible": cmd_feasible,
    "sweep-r": cmd_sweep_r,
    "sweep-n": cmd_sweep_n,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except GaussmemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
