"""Command-line front end.

Subcommands: ``fit``, ``segment``, ``diversion``, ``takeoff``, ``report``,
``plot``, ``synth``, ``verify``.  Exit codes: 0 success, 1 analysis/region
error, 2 usage or config error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .acceptance import check_world_reproduction, run_all_checks
from .errors import GeneratorError, HypergrowthError, ParseError, RegionError
from .fit import FitWindow, fit_hyperbolic, goodness, scan_windows
from .ingest import (
    RegionDefinition,
    build_region_series,
    parse_long_csv,
    parse_region_config,
    parse_wide_table,
    series_to_long_csv,
)
from .model import round_half_up
from .plots import build_plot_sheet, plot_sheet_csv, plot_sheet_svg
from .regime import detect_diversion, segment_two_hyperbolic
from .report import render_report, run_analysis
from .series import YearValueSeries
from .synth import GeneratorSpec, generate, maddison_year_grid
from .takeoff import TakeoffHypothesis, takeoff_test

USAGE_ERROR = 2
ANALYSIS_ERROR = 1


class CliError(Exception):
    def __init__(self, message: str, code: int = USAGE_ERROR):
        super().__init__(message)
        self.code = code


def _write_output(data: bytes, out: str | None):
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))


def _json_bytes(obj) -> bytes:
    return (json.dumps(obj, indent=2, sort_keys=True) + "\n").encode("utf-8")


def _parse_window(text: str) -> FitWindow:
    parts = text.split(":")
    if len(parts) != 2:
        raise CliError(f"--window must be START:END, got {text!r}")
    try:
        return FitWindow(float(parts[0]), float(parts[1]))
    except (ValueError, HypergrowthError) as exc:
        raise CliError(f"bad --window {text!r}: {exc}") from exc


def _add_input_args(p: argparse.ArgumentParser):
    p.add_argument("--input", required=True, help="input CSV file")
    p.add_argument("--format", choices=("long", "wide"), default="long")
    p.add_argument("--unit-scale", type=float, default=1.0,
                   help="factor converting source units to billions")
    p.add_argument("--region", help="region (with --regions-config) or entity name")
    p.add_argument("--regions-config", help="region definition file")


def _add_common_args(p: argparse.ArgumentParser):
    p.add_argument("--out", help="output file (default: stdout)")


def _load_table(args):
    data = Path(args.input).read_bytes()
    if args.format == "wide":
        return parse_wide_table(data, args.unit_scale)
    return parse_long_csv(data, args.unit_scale)


def _load_series(args) -> YearValueSeries:
    table = _load_table(args)
    if args.regions_config:
        config = parse_region_config(Path(args.regions_config).read_text())
        if not args.region:
            raise CliError("--region is required with --regions-config")
        for rc in config.regions:
            if rc.definition.name == args.region:
                return build_region_series(table, rc.definition)
        raise CliError(f"region {args.region!r} not in {args.regions_config}")
    if args.region:
        return table.entity_series(args.region)
    if len(table.entities) == 1:
        return table.entity_series(table.entities[0])
    raise CliError(
        f"input holds {len(table.entities)} entities; select one with --region"
    )


def _fit_summary(fit) -> dict:
    return {
        "a": fit.model.a,
        "k": fit.model.k,
        "singularity": fit.model.singularity_year,
        "singularity_year": round_half_up(fit.model.singularity_year),
        "window": [fit.window.start_year, fit.window.end_year],
        "n_points": fit.n_points,
        "rmse_reciprocal": fit.rmse_reciprocal,
        "r2_reciprocal": fit.r2_reciprocal,
        "max_abs_relative_deviation": fit.max_abs_relative_deviation,
        "weighting": fit.weighting,
    }


def _fit_series(series, args):
    if args.window:
        return fit_hyperbolic(series, _parse_window(args.window), args.weighting)
    ranked = scan_windows(series, weighting=args.weighting)
    if not ranked:
        raise RegionError(f"no hyperbolic window found for {series.label!r}")
    return ranked[0]


def cmd_fit(args) -> int:
    series = _load_series(args)
    fit = _fit_series(series, args)
    report = goodness(fit, series)
    doc = _fit_summary(fit)
    doc["deviations_percent"] = [[y, d] for y, d in report.deviations]
    _write_output(_json_bytes(doc), args.out)
    return 0


def cmd_segment(args) -> int:
    series = _load_series(args)
    if args.window:
        series = series.slice_window(
            _parse_window(args.window).start_year, _parse_window(args.window).end_year
        )
    seg = segment_two_hyperbolic(series, weighting=args.weighting)
    doc = {
        "breakpoint_year": seg.breakpoint_year,
        "k_ratio": seg.k_ratio,
        "total_sse_reciprocal": seg.total_sse,
        "segments": [
            {
                "window": [s.window.start_year, s.window.end_year],
                "kind": s.kind,
                **({"fit": _fit_summary(s.fit)} if s.fit else {}),
            }
            for s in seg.segments
        ],
    }
    _write_output(_json_bytes(doc), args.out)
    return 0


def cmd_diversion(args) -> int:
    series = _load_series(args)
    fit = _fit_series(series, args)
    finding = detect_diversion(series, fit, m=args.run_length, tau=args.tau)
    doc = {"fit": _fit_summary(fit), "finding": None}
    if finding is not None:
        doc["finding"] = {
            "year": finding.year,
            "direction": finding.direction,
            "proximity_years": finding.proximity_years,
            "evidence": [
                {
                    "year": r.year,
                    "observed_reciprocal": r.observed_reciprocal,
                    "fitted_reciprocal": r.fitted_reciprocal,
                    "delta": r.delta,
                }
                for r in finding.evidence
            ],
        }
    _write_output(_json_bytes(doc), args.out)
    return 0


def cmd_takeoff(args) -> int:
    series = _load_series(args)
    hyp = TakeoffHypothesis(args.predicted_year, args.halfwidth)
    result = takeoff_test(series, hyp)
    doc = dataclasses.asdict(result)
    doc["hypothesis"] = {
        "predicted_year": hyp.predicted_year,
        "search_halfwidth": hyp.search_halfwidth,
    }
    _write_output(_json_bytes(_sanitize(doc)), args.out)
    return 0


def _sanitize(obj):
    # JSON has no inf/nan; report them as strings.
    if isinstance(obj, dict):
        return {k: _sanitize(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_sanitize(v) for v in obj]
    if isinstance(obj, float) and (obj != obj or obj in (float("inf"), float("-inf"))):
        return str(obj)
    return obj


def cmd_report(args) -> int:
    if not args.regions_config:
        raise CliError("report requires --regions-config")
    config = parse_region_config(Path(args.regions_config).read_text())
    data = Path(args.input).read_bytes()
    unit_scale = args.unit_scale if args.unit_scale != 1.0 else config.unit_scale
    if args.format == "wide":
        table = parse_wide_table(data, unit_scale)
    else:
        table = parse_long_csv(data, unit_scale)
    rows, errors = run_analysis(table, config, weighting=args.weighting)
    _write_output(render_report(rows, args.emit), args.out)
    for err in errors:
        print(f"error: {err.region}: {err.message}", file=sys.stderr)
    return ANALYSIS_ERROR if errors else 0


def cmd_plot(args) -> int:
    series = _load_series(args)
    annotations = []
    if args.two_regime:
        seg = segment_two_hyperbolic(series, weighting=args.weighting)
        fits = [s.fit for s in seg.hyperbolic_segments()]
        if not fits:
            raise RegionError("no hyperbolic regime to plot")
        annotations.append(("breakpoint", seg.breakpoint_year))
        last_fit = fits[-1]
    else:
        last_fit = _fit_series(series, args)
        fits = [last_fit]
    annotations.append(("singularity", last_fit.model.singularity_year))
    if series.after(last_fit.window.end_year) is not None:
        finding = detect_diversion(series, last_fit)
        if finding is not None:
            annotations.append((f"diversion ({finding.direction})", finding.year))
    mode = "reciprocal-linear" if args.mode == "reciprocal" else "semilog-direct"
    sheet = build_plot_sheet(series, fits, mode, annotations)
    if args.emit == "svg":
        _write_output(plot_sheet_svg(sheet), args.out)
    else:
        _write_output(plot_sheet_csv(sheet), args.out)
    return 0


def _parse_params(pairs) -> dict:
    params = {}
    for pair in pairs or ():
        if "=" not in pair:
            raise CliError(f"--param expects key=value, got {pair!r}")
        key, _, value = pair.partition("=")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise CliError(f"--param {key}: {value!r} is not a number") from None
    return params


def cmd_synth(args) -> int:
    if args.maddison_grid:
        years = maddison_year_grid()
    elif args.years:
        parts = args.years.split(":")
        if len(parts) not in (2, 3):
            raise CliError(f"--years must be START:END[:STEP], got {args.years!r}")
        try:
            start, end = float(parts[0]), float(parts[1])
            step = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise CliError(f"bad --years {args.years!r}") from None
        years = []
        y = start
        while y <= end + 1e-9:
            years.append(y)
            y += step
    else:
        raise CliError("synth requires --years or --maddison-grid")
    spec = GeneratorSpec(
        kind=args.kind,
        parameters=_parse_params(args.param),
        sample_years=tuple(years),
        noise=args.noise,
        seed=args.seed,
        label=args.label,
    )
    series = generate(spec)
    _write_output(series_to_long_csv(series), args.out)
    return 0


def cmd_verify(args) -> int:
    results = run_all_checks(trials=args.trials)
    if args.maddison:
        data = Path(args.maddison).read_bytes()
        results.append(
            check_world_reproduction(
                data, wide=args.format == "wide", unit_scale=args.unit_scale
            )
        )
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status}  {r.name}: {r.detail}")
        failed += 0 if r.passed else 1
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else ANALYSIS_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hypergrowth",
        description="Hyperbolic growth-regime analysis of historical time series",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def analysis_command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _add_input_args(p)
        _add_common_args(p)
        p.add_argument("--window", help="fit window START:END (inclusive years)")
        p.add_argument("--weighting", choices=("uniform", "direct"), default="uniform")
        return p

    analysis_command("fit", "fit one hyperbolic model and report diagnostics")
    analysis_command("segment", "split a series into two hyperbolic regimes")

    p = analysis_command("diversion", "detect departure from a fitted trajectory")
    p.add_argument("--run-length", type=int, default=2, metavar="M",
                   help="consecutive offending points required")
    p.add_argument("--tau", type=float, default=3.0,
                   help="threshold in robust in-window residual scales")

    p = analysis_command("takeoff", "test the takeoff-from-stagnation signature")
    p.add_argument("--predicted-year", type=float, required=True)
    p.add_argument("--halfwidth", type=float, default=50.0)

    p = sub.add_parser("report", help="run the full per-region pipeline")
    _add_input_args(p)
    _add_common_args(p)
    p.add_argument("--weighting", choices=("uniform", "direct"), default="uniform")
    p.add_argument("--emit", choices=("json", "csv", "markdown"), default="markdown")

    p = analysis_command("plot", "emit figure data as CSV or SVG")
    p.add_argument("--mode", choices=("reciprocal", "semilog"), default="reciprocal")
    p.add_argument("--two-regime", action="store_true")
    p.add_argument("--emit", choices=("csv", "svg"), default="svg")

    p = sub.add_parser("synth", help="generate a synthetic series as long CSV")
    _add_common_args(p)
    p.add_argument("--kind", required=True,
                   choices=("hyperbolic", "constant", "exponential",
                            "stagnation-then-takeoff", "spliced-two-hyperbolic",
                            "hyperbolic-then-slower"))
    p.add_argument("--param", action="append", metavar="KEY=VALUE",
                   help="generator parameter, repeatable")
    p.add_argument("--years", help="sample years START:END[:STEP]")
    p.add_argument("--maddison-grid", action="store_true",
                   help="use the sparse historical sampling grid")
    p.add_argument("--noise", type=float, default=0.0,
                   help="multiplicative log-normal sigma")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--label", default="")

    p = sub.add_parser("verify", help="run the built-in acceptance checks")
    p.add_argument("--trials", type=int, default=1000,
                   help="Monte-Carlo trials per statistical check")
    p.add_argument("--maddison", help="optional Maddison-2010 CSV for the "
                                      "data-dependent reproduction check")
    p.add_argument("--format", choices=("long", "wide"), default="wide")
    p.add_argument("--unit-scale", type=float, default=1e-3)

    return parser


_COMMANDS = {
    "fit": cmd_fit,
    "segment": cmd_segment,
    "diversion": cmd_diversion,
    "takeoff": cmd_takeoff,
    "report": cmd_report,
    "plot": cmd_plot,
    "synth": cmd_synth,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ParseError, GeneratorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except HypergrowthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ANALYSIS_ERROR
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
