"""Command-line entry point: ``wrdrift {simulate,report,fit,channels,compare,dump-config}``.

Exit codes: 0 success, 1 other failure, 2 configuration error,
3 physics-validity error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import channels, output
from .config import dump_config, load_config
from .errors import ConfigError, ModelValidityError, WrDriftError
from .experiment import compare_plans, simulate
from .wrlink import first_order_drift_per_nm, fit_dlambda0

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_PHYSICS = 3


def _print_report(report):
    sys.stdout.write(output.report_csv(report))


def cmd_simulate(args) -> int:
    scenario = load_config(args.config)
    if args.seed is not None:
        scenario = replace(scenario, noise=replace(scenario.noise, seed=args.seed))
    series, _, report = simulate(scenario)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = args.prefix or Path(args.config).stem
    output.write_series_csv(series, out_dir / f"{stem}_series.csv")
    output.write_report(report, out_dir / f"{stem}_report.csv")
    if not args.no_plot:
        output.emit_plot_svg(series, out_dir / f"{stem}.svg")
    _print_report(report)
    return EXIT_OK


def cmd_report(args) -> int:
    _, _, report = simulate(load_config(args.config))
    if args.output:
        output.write_report(report, args.output)
    else:
        _print_report(report)
    return EXIT_OK


def cmd_fit(args) -> int:
    scenario = load_config(args.config)
    t_hot = args.t_hot_c
    if t_hot is None:
        t_hot = max(seg.setpoint_c for seg in scenario.profile.segments)
    k = fit_dlambda0(scenario.fiber, scenario.plan, scenario.t_cal_c, t_hot, args.target_ps)
    closed = args.target_ps / (first_order_drift_per_nm(scenario.fiber, scenario.plan) * abs(t_hot - scenario.t_cal_c))
    print(f"dlambda0_dt_nm_per_k = {k:.8f}")
    print(f"dispersion_only_first_order_nm_per_k = {closed:.8f}")
    print(f"relative_difference = {(k - closed) / closed:+.4%}")
    return EXIT_OK


def cmd_channels(args) -> int:
    sys.stdout.write("channel,frequency_thz,itu_frequency_nm,vendor_linear_nm\n")
    for ch, f, itu, vendor in channels.channel_table():
        sys.stdout.write(f"{ch},{f:.1f},{itu:.3f},{vendor:.3f}\n")
    return EXIT_OK


def cmd_compare(args) -> int:
    a = output.read_report(args.report_a)
    b = output.read_report(args.report_b)
    print(f"{compare_plans(a, b):.3f}")
    return EXIT_OK


def cmd_dump_config(args) -> int:
    from .experiment import Scenario

    scenario = load_config(args.config) if args.config else Scenario()
    sys.stdout.write(dump_config(scenario))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wrdrift",
        description="White Rabbit offset drift over a temperature-cycled fiber.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run a scenario; write series CSV, report CSV and SVG plot")
    p.add_argument("config", help="scenario config file (INI)")
    p.add_argument("--out-dir", default=".", help="output directory (default: current)")
    p.add_argument("--prefix", default=None, help="output file stem (default: config file stem)")
    p.add_argument("--seed", type=int, default=None, help="override [noise] seed")
    p.add_argument("--no-plot", action="store_true", help="skip the SVG plot")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("report", help="run a scenario and print only the report")
    p.add_argument("config")
    p.add_argument("--output", "-o", default=None, help="write report CSV here instead of stdout")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("fit", help="fit the lambda0 temperature coefficient to a target drift")
    p.add_argument("config")
    p.add_argument("--target-ps", type=float, required=True, help="target |dt drift| in ps")
    p.add_argument("--t-hot-c", type=float, default=None,
                   help="hot temperature in C (default: highest chamber setpoint)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("channels", help="print the 72-channel DWDM grid as CSV")
    p.set_defaults(func=cmd_channels)

    p = sub.add_parser("compare", help="ratio of dt_delta between two report CSVs (a / b)")
    p.add_argument("report_a")
    p.add_argument("report_b")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("dump-config", help="print a fully resolved config (defaults if none given)")
    p.add_argument("config", nargs="?", default=None)
    p.set_defaults(func=cmd_dump_config)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ModelValidityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (WrDriftError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
