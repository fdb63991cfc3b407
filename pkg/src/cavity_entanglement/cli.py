#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
Command-line front end for cavity-entanglement.

    cavity-entanglement sweep  --alphas 1/sqrt(10),3/sqrt(10) --partitions cc,rr
    cavity-entanglement events --alphas 1/sqrt(10),3/sqrt(10)
    cavity-entanglement oracle --n-modes 400 --bandwidth 40
    cavity-entanglement init-config cavity_entanglement.yaml
"""

import argparse
import logging
import sys
from typing import List, Optional

from colorama import Fore, Style

from . import __version__, numerics
from .config import EngineConfig, create_default_config_file
from .errors import (EXIT_OK, ConfigError, EntanglementError, ErrorReportFormatter,
                     extract_from_exception)
from .events import (analytic_times, dead_window, has_closed_form, scan_events,
                     simultaneity_condition)
from .expressions import parse_amplitudes
from .log import configure_logging
from .oracle import OracleConfig, leak_deviation, simulate_single_excitation
from .output import (events_summary, events_table, gnuplot_script, write_events_csv,
                     write_oracle_csv, write_sweep_csv)
from .state import check_alphas, normalize_amplitudes
from .sweep import SweepConfig, run_sweep

logger = logging.getLogger(__name__)


def _pick(flag, default):
    return default if flag is None else flag


def _add_amplitude_options(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--alphas",
        required=True,
        help="Comma-separated initial amplitudes alpha_0..alpha_d, decimals or "
             "expressions such as 1/sqrt(10)",
    )
    parser.add_argument(
        "--normalize",
        action="store_true",
        help="Rescale the amplitudes to unit norm instead of rejecting them",
    )
    parser.add_argument(
        "--kappa",
        type=float,
        default=None,
        help="Cavity decay rate (default: 1)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cavity-entanglement",
        description="Entanglement dynamics of two leaking cavities and their reservoirs",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--config",
        default=None,
        help="YAML configuration file (see init-config)",
    )
    parser.add_argument(
        "-v", "--verbose",
        action="count",
        default=0,
        help="Increase log verbosity (-v info, -vv debug)",
    )
    parser.add_argument(
        "--no-color",
        action="store_true",
        help="Disable coloured terminal output",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="Entanglement series on a time grid as CSV")
    _add_amplitude_options(sweep)
    sweep.add_argument("--t-max", type=float, default=None,
                       help="Horizon in units of 1/kappa (default: 6)")
    sweep.add_argument("--steps", type=int, default=None,
                       help="Number of grid points (default: 2000)")
    sweep.add_argument("--partitions", default=None,
                       help="Comma-separated presets or pair:/cut: series (default: cc,rr)")
    sweep.add_argument("--workers", type=int, default=None,
                       help="Worker processes for grid evaluation (default: 1)")
    sweep.add_argument("--output", default=None, help="Write CSV here instead of stdout")
    sweep.add_argument("--gnuplot", default=None, metavar="PATH",
                       help="Also write a gnuplot script plotting the --output CSV")
    sweep.set_defaults(handler=cmd_sweep)

    events = sub.add_parser("events", help="Sudden death and birth times")
    _add_amplitude_options(events)
    events.add_argument("--t-max", type=float, default=None,
                        help="Scan horizon in units of 1/kappa (default: 6)")
    events.add_argument("--steps", type=int, default=None,
                        help="Scan grid points (default: 2000)")
    events.add_argument("--tol", type=float, default=None,
                        help="Bisection tolerance in time (default: 1e-8)")
    events.add_argument("--csv", default=None, metavar="PATH",
                        help="Also write the event table as CSV")
    events.set_defaults(handler=cmd_events)

    oracle = sub.add_parser("oracle", help="Finite-mode reservoir check of exp(-kappa t/2)")
    oracle.add_argument("--n-modes", type=int, default=None, help="Reservoir modes N")
    oracle.add_argument("--bandwidth", type=float, default=None,
                        help="Band width W in units of kappa")
    oracle.add_argument("--kappa", type=float, default=None, help="Target decay rate")
    oracle.add_argument("--t-max", type=float, default=None, help="Integration horizon")
    oracle.add_argument("--dt", type=float, default=None, help="Runge-Kutta step")
    oracle.add_argument("--output", default=None, help="Write CSV here instead of stdout")
    oracle.set_defaults(handler=cmd_oracle)

    init = sub.add_parser("init-config", help="Write a commented default configuration file")
    init.add_argument("path", nargs="?", default="cavity_entanglement.yaml")
    init.set_defaults(handler=cmd_init_config)

    return parser


def _paint(text: str, color: str, enabled: bool) -> str:
    return f"{color}{text}{Style.RESET_ALL}" if enabled else text


def _amplitudes(args) -> List[float]:
    alphas = parse_amplitudes(args.alphas)
    if args.normalize:
        alphas, factor = normalize_amplitudes(alphas)
        sys.stderr.write(f"normalized amplitudes by factor {factor:.12g}\n")
    check_alphas(alphas)
    return alphas


def _open_output(path: Optional[str]):
    if path is None:
        return sys.stdout
    try:
        return open(path, "w", encoding="utf-8", newline="")
    except OSError as e:
        raise ConfigError(f"cannot open {path} for writing: {e}") from e


def cmd_sweep(args, config: EngineConfig) -> int:
    if args.gnuplot and not args.output:
        raise ConfigError("--gnuplot needs --output so the script can reference the CSV")
    defaults = config.sweep
    partitions = (args.partitions.split(",") if args.partitions is not None
                  else list(defaults.partitions))
    sweep_config = SweepConfig(
        alphas=_amplitudes(args),
        kappa=_pick(args.kappa, defaults.kappa),
        t_max=_pick(args.t_max, defaults.t_max),
        steps=_pick(args.steps, defaults.steps),
        partitions=[p.strip() for p in partitions if p.strip()],
        workers=_pick(args.workers, defaults.workers),
    )
    result = run_sweep(sweep_config)

    stream = _open_output(args.output)
    try:
        write_sweep_csv(result, stream, config.output.significant_digits)
    finally:
        if stream is not sys.stdout:
            stream.close()

    if args.gnuplot:
        ylabel = "LBOE" if "lboe" in result.measure_kinds else "concurrence"
        stream = _open_output(args.gnuplot)
        try:
            stream.write(gnuplot_script(args.output, result.names, ylabel=ylabel))
        finally:
            stream.close()
        logger.info("gnuplot script written to %s", args.gnuplot)
    return EXIT_OK


def cmd_events(args, config: EngineConfig) -> int:
    defaults = config.events
    color = config.output.color and not args.no_color
    alphas = _amplitudes(args)
    kappa = _pick(args.kappa, config.sweep.kappa)

    reports = scan_events(
        alphas,
        kappa=kappa,
        t_max=_pick(args.t_max, defaults.scan_t_max),
        steps=_pick(args.steps, defaults.scan_steps),
        value_tol=defaults.value_tol,
        time_tol=_pick(args.tol, defaults.time_tol),
    )
    reference = analytic_times(alphas, kappa)
    window = dead_window(reports)
    simultaneous = reference is not None and reference.simultaneous(defaults.simultaneity_tol)

    print(events_table(reports))
    summary = events_summary(reports, reference, window, simultaneous,
                             closed_form=has_closed_form(alphas),
                             ratio_rule=simultaneity_condition(alphas))
    for line in summary:
        tint = Fore.YELLOW if line.startswith(("NoESD", "no crossings")) else Fore.GREEN
        print(_paint(line, tint, color))

    if args.csv:
        stream = _open_output(args.csv)
        try:
            write_events_csv(reports, stream, config.output.significant_digits)
        finally:
            stream.close()
    return EXIT_OK


def cmd_oracle(args, config: EngineConfig) -> int:
    defaults = config.oracle
    oracle_config = OracleConfig(
        n_modes=_pick(args.n_modes, defaults.n_modes),
        bandwidth=_pick(args.bandwidth, defaults.bandwidth),
        kappa=_pick(args.kappa, defaults.kappa),
        t_max=_pick(args.t_max, defaults.t_max),
        dt=_pick(args.dt, defaults.dt),
    ).validate()
    series = simulate_single_excitation(oracle_config)

    stream = _open_output(args.output)
    try:
        max_dev = write_oracle_csv(series, oracle_config.kappa, stream,
                                   config.output.significant_digits)
    finally:
        if stream is not sys.stdout:
            stream.close()
    logger.info("oracle N=%d W=%g: max_dev=%.3e, leak deviation %.3e, norm error %.3e",
                oracle_config.n_modes, oracle_config.bandwidth, max_dev,
                leak_deviation(series, oracle_config.kappa), series.norm_error())
    return EXIT_OK


def cmd_init_config(args, config: EngineConfig) -> int:
    create_default_config_file(args.path)
    print(f"configuration written to {args.path}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, color=not args.no_color)

    try:
        config = EngineConfig.from_yaml(args.config) if args.config else EngineConfig()
        configure_logging(args.verbose, color=config.output.color and not args.no_color)
        numerics.configure(config.numerics)
        return args.handler(args, config)
    except (EntanglementError, ValueError) as e:
        details = extract_from_exception(e, with_trace=args.verbose >= 2)
        color = not args.no_color
        sys.stderr.write(_paint(ErrorReportFormatter.format_for_console(details), Fore.RED, color))
        return details.exit_code


if __name__ == "__main__":
    sys.exit(main())
