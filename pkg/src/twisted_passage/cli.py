"""Command-line front end.

Subcommands: simulate, sweep, quench, pump, convert, levels, validate, plot.

Every subcommand accepts ``--config FILE``: a JSON object whose keys are the
long option names (dashes or underscores).  Flags given on the command line
override values from the file.

Exit codes: 0 success, 1 usage or config error, 2 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .analytic import quadratic_exact
from .bridge import (
    ExperimentParams,
    cnot_level_structure,
    from_dimensionless,
    inversion_time,
    pi_pulse_time,
    to_dimensionless,
)
from .core_model import PulseParams
from .crossings import predict_crossings
from .dynamics import IntegrationError, IntegratorConfig, integrate
from .io import ConfigError, dumps, fmt, format_sweep, load_config, read_trajectory, write_json, write_sweep, write_trajectory
from .sweeps import EtaRange, NoInteriorExtremumError, SweepSpec, default_workers, find_pump, find_quench, sweep

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; 2 is reserved for numerical failure here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------- arguments

def _add_pulse(p, eta=True, n_default=2):
    p.add_argument("--lambda", dest="lam", type=float, help="dimensionless inversion rate (> 0)")
    if eta:
        p.add_argument("--eta", type=float, default=0.0, help="dimensionless twist strength")
    p.add_argument("--n", type=int, default=n_default, help="twist order (integer >= 2)")


def _add_integrator(p):
    g = p.add_argument_group("integrator")
    d = IntegratorConfig()
    g.add_argument("--rel-tol", type=float, default=d.rel_tol)
    g.add_argument("--abs-tol", type=float, default=d.abs_tol)
    g.add_argument("--initial-step", type=float, default=d.initial_step)
    g.add_argument("--max-step", type=float, default=d.max_step)
    g.add_argument("--tau0", type=float, default=None, help="full window; default: automatic rule")
    g.add_argument("--samples", type=int, default=d.n_samples, help="evenly spaced output samples")


def _add_format(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv", help="data file format")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="twisted-passage", description="Twisted rapid passage of a qubit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="integrate one pulse")
    _add_pulse(p)
    _add_integrator(p)
    _add_format(p)
    p.add_argument("--trajectory", type=Path, help="write samples here")
    p.add_argument("--summary", type=Path, help="write the JSON summary here (default: stdout)")

    p = sub.add_parser("sweep", help="asymptotic P over a grid of twist strengths")
    _add_pulse(p, eta=False)
    grid = p.add_mutually_exclusive_group()
    grid.add_argument("--etas", type=float, nargs="*", help="explicit grid values")
    grid.add_argument("--eta-range", type=float, nargs=3, metavar=("START", "STOP", "COUNT"))
    p.add_argument("--oracle", choices=("none", "quadratic"), default="none")
    p.add_argument("--workers", type=int, default=None, help="worker processes (default: $TWISTED_PASSAGE_WORKERS or 1)")
    _add_integrator(p)
    _add_format(p)
    p.add_argument("--out", type=Path, help="write the table here (default: stdout)")
    p.add_argument("--summary", type=Path, help="write a JSON summary here")

    for name, helptext in (("quench", "minimise P over eta"), ("pump", "maximise P over eta")):
        p = sub.add_parser(name, help=helptext)
        _add_pulse(p, eta=False)
        p.add_argument("--bracket", type=float, nargs=2, metavar=("LO", "HI"))
        p.add_argument("--tol-eta", type=float, default=None, help="final bracket width (default: 1%% of bracket)")
        p.add_argument("--probe-points", type=int, default=7, help="coarse probe grid size (>= 3)")
        _add_integrator(p)
        p.add_argument("--out", type=Path, help="write the report here (default: stdout)")

    p = sub.add_parser("convert", help="dimensionless <-> spectrometer parameters")
    direction = p.add_mutually_exclusive_group()
    direction.add_argument("--to-experiment", action="store_true")
    direction.add_argument("--to-dimensionless", action="store_true")
    direction.add_argument("--check-roundtrip", action="store_true",
                           help="convert to the spectrometer and back; fail unless identical to 1e-12")
    _add_pulse(p, n_default=4)
    p.add_argument("--omega1", type=float)
    p.add_argument("--f", type=float, default=0.1, help="omega1/|A| (<= 0.2)")
    p.add_argument("--A", dest="A", type=float)
    p.add_argument("--T", dest="T", type=float)
    p.add_argument("--B-exp", type=float, default=0.0)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("levels", help="two-spin level structure for a CNOT")
    p.add_argument("--omega-c", type=float)
    p.add_argument("--omega-t", type=float)
    p.add_argument("--J", dest="J", type=float)
    p.add_argument("--out", type=Path)

    p = sub.add_parser("validate", help="run the self-consistency checks")
    p.add_argument("--strict", action="store_true", help="tighten every limit tenfold")

    p = sub.add_parser("plot", help="render P(tau) from a trajectory file to SVG")
    p.add_argument("trajectory", type=Path, nargs="?")
    p.add_argument("--out", type=Path)
    p.add_argument("--title", default=None)

    for action in sub.choices.values():
        action.add_argument("--config", type=Path, help="JSON file of option values")
    parser.subcommands = sub.choices
    return parser


def _apply_config(parser, argv):
    """Parse twice: once to find --config, then with its values as defaults."""
    args = parser.parse_args(argv)
    if args.config is None:
        return args
    doc = load_config(args.config)
    subparser = parser.subcommands[args.command]
    known = {a.dest: a for a in subparser._actions}
    defaults = {}
    for key, value in doc.items():
        dest = key.replace("-", "_")
        dest = {"lambda": "lam"}.get(dest, dest)
        if dest not in known or dest in ("help", "config"):
            raise ConfigError(f"{args.config}: unknown option {key!r} for {args.command}")
        defaults[dest] = value
    subparser.set_defaults(**defaults)
    return parser.parse_args(argv)


# ---------------------------------------------------------------- helpers

def _integrator(args) -> IntegratorConfig:
    try:
        return IntegratorConfig(
            rel_tol=args.rel_tol,
            abs_tol=args.abs_tol,
            initial_step=args.initial_step,
            max_step=args.max_step,
            tau0=args.tau0,
            n_samples=args.samples,
        )
    except (TypeError, ValueError) as exc:
        raise UsageError(f"invalid integrator settings: {exc}") from None


def _require(args, *names):
    missing = [n for n in names if getattr(args, n, None) is None]
    if missing:
        flags = ", ".join("--" + {"lam": "lambda"}.get(n, n).replace("_", "-") for n in missing)
        raise UsageError(f"missing required option(s): {flags}")


def _pulse(args, eta=None) -> PulseParams:
    _require(args, "lam")
    try:
        return PulseParams(args.lam, args.eta if eta is None else eta, args.n)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _emit(doc, path):
    if path is None:
        sys.stdout.write(dumps(doc))
    else:
        write_json(path, doc)


def _writable(path):
    if path is not None and not Path(path).parent.exists():
        raise UsageError(f"cannot write {path}: directory does not exist")


# ---------------------------------------------------------------- commands

def cmd_simulate(args):
    params = _pulse(args)
    config = _integrator(args)
    _writable(args.trajectory)
    _writable(args.summary)
    traj = integrate(params, config)
    crossings = predict_crossings(params)
    summary = {
        "lambda": params.lam,
        "eta": params.eta,
        "n": params.n,
        "P_asymptotic": traj.asymptotic_probability,
        "fidelity": 1.0 - traj.asymptotic_probability,
        "crossings": list(crossings.locations),
        "tau0": traj.tau0,
        "steps_taken": traj.steps_taken,
        "rejected_steps": traj.rejected_steps,
        "max_norm_drift": traj.max_norm_drift,
        "integrator": asdict(config),
    }
    if args.trajectory is not None:
        write_trajectory(args.trajectory, traj, args.format)
    _emit(summary, args.summary)


def cmd_sweep(args):
    _require(args, "lam")
    if args.eta_range is not None:
        start, stop, count = args.eta_range
        if count != int(count) or count < 1:
            raise UsageError("--eta-range COUNT must be a positive integer")
        grid = EtaRange(start, stop, int(count))
    elif args.etas:
        grid = tuple(args.etas)
    else:
        raise UsageError("empty eta grid: give --etas or --eta-range")
    try:
        spec = SweepSpec(args.lam, args.n, grid, _integrator(args))
        workers = default_workers() if args.workers is None else args.workers
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if workers < 1:
        raise UsageError("--workers must be >= 1")
    _writable(args.out)
    _writable(args.summary)
    oracle = None if args.oracle == "none" else args.oracle
    result = sweep(spec, workers)
    if args.out is None:
        sys.stdout.write(format_sweep(result, oracle, args.format))
    else:
        write_sweep(args.out, result, oracle, args.format)
    summary = {"metadata": result.metadata, "failed_rows": sum(r.P is None for r in result.rows)}
    if oracle == "quadratic":
        devs = [abs(r.P - quadratic_exact(spec.lam, r.eta)) for r in result.rows if r.P is not None]
        summary["max_deviation_from_quadratic_exact"] = max(devs) if devs else None
        sys.stderr.write(f"max |P - P_exact| = {fmt(summary['max_deviation_from_quadratic_exact'])}\n")
    if args.summary is not None:
        write_json(args.summary, summary)
    if summary["failed_rows"]:
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_optimum(args, finder):
    _require(args, "lam", "bracket")
    _pulse(args, eta=0.0)
    _writable(args.out)
    config = _integrator(args)
    try:
        report = finder(args.lam, args.n, args.bracket, args.tol_eta, config, args.probe_points)
    except NoInteriorExtremumError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(
        {
            "kind": report.kind,
            "lambda": args.lam,
            "n": args.n,
            "eta_star": report.eta_star,
            "P_star": report.P_star,
            "fidelity": report.fidelity,
            "meets_ft": report.meets_ft,
            "bracket": list(report.bracket),
            "evaluations": report.evaluations,
        },
        args.out,
    )


def cmd_quench(args):
    return _cmd_optimum(args, find_quench)


def cmd_pump(args):
    return _cmd_optimum(args, find_pump)


def cmd_convert(args):
    _writable(args.out)
    try:
        if args.to_dimensionless:
            _require(args, "A", "omega1", "T")
            exp = ExperimentParams(args.A, args.B_exp, args.omega1, args.T, args.n)
            lam = 4.0 * abs(exp.A) / (exp.omega1**2 * exp.T)
            doc = {"lambda": lam, "n": exp.n, "eta": None}
            if exp.n in (3, 4):
                doc["eta"] = to_dimensionless(exp).eta
        else:
            _require(args, "lam", "omega1")
            params = _pulse(args)
            exp = from_dimensionless(params, args.omega1, args.f)
            doc = {
                "A": exp.A,
                "B_exp": exp.B_exp,
                "omega1": exp.omega1,
                "T": exp.T,
                "n": exp.n,
                "f": args.f,
                "T_pi": pi_pulse_time(exp.omega1),
                "T_over_T_pi": inversion_time(args.f, exp.omega1, params.lam) / pi_pulse_time(exp.omega1),
            }
            if args.check_roundtrip:
                back = to_dimensionless(exp)
                err = max(abs(back.lam / params.lam - 1.0),
                          abs(back.eta - params.eta) / abs(params.eta) if params.eta else abs(back.eta))
                doc = {"lambda": params.lam, "eta": params.eta, "lambda_back": back.lam,
                       "eta_back": back.eta, "relative_error": err, "ok": err <= 1e-12}
                _emit(doc, args.out)
                return EXIT_OK if doc["ok"] else EXIT_NUMERICAL
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(doc, args.out)


def cmd_levels(args):
    _require(args, "omega_c", "omega_t", "J")
    _writable(args.out)
    try:
        lv = cnot_level_structure(args.omega_c, args.omega_t, args.J)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(asdict(lv), args.out)


def cmd_validate(args):
    from .validation import run_checks

    checks = run_checks(strict=args.strict)
    width = max(len(c.name) for c in checks)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status}  {c.name:<{width}}  value={c.value:.3e}  limit={c.limit:.1e}  margin={c.margin:.3g}x")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_NUMERICAL


def cmd_plot(args):
    from .plotting import plot_trace

    _require(args, "trajectory", "out")
    _writable(args.out)
    try:
        table = read_trajectory(args.trajectory)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read trajectory {args.trajectory}: {exc}") from None
    if len(table) == 0:
        raise UsageError(f"{args.trajectory}: empty trajectory: nothing to plot")
    plot_trace(table.tau, table.P, args.out, title=args.title)


COMMANDS = {
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "quench": cmd_quench,
    "pump": cmd_pump,
    "convert": cmd_convert,
    "levels": cmd_levels,
    "validate": cmd_validate,
    "plot": cmd_plot,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = _apply_config(parser, argv)
        code = COMMANDS[args.command](args)
    except (UsageError, ConfigError) as exc:
        print(f"twisted-passage: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IntegrationError, NoInteriorExtremumError) as exc:
        print(f"twisted-passage: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"twisted-passage: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
