"""Region analysis pipeline and report rendering.

``run_analysis`` turns a dataset table plus a region config into one report
row per fitted regime: parameters, hyperbolic range, singularity year,
proximity of the detected diversion and the takeoff verdict.  Regions that
fail are collected as error entries without aborting the rest.

Reports render to JSON (full precision, versioned schema), CSV and a
markdown table; human-readable formats print parameters with 4 significant
digits in compact scientific notation (``1.684e-2``).
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

from .errors import FitError, HypergrowthError, TooFewPointsError
from .fit import FitWindow, HyperbolicFit, fit_hyperbolic, scan_windows
from .ingest import AnalysisConfigFile, DatasetTable, build_region_series
from .model import round_half_up
from .regime import detect_diversion, segment_two_hyperbolic
from .series import YearValueSeries
from .takeoff import TakeoffConfig, TakeoffHypothesis, takeoff_test

SCHEMA_VERSION = 1


def format_sci(x: float) -> str:
    """4-significant-digit scientific notation with a bare exponent."""
    mantissa, exp = f"{x:.3e}".split("e")
    return f"{mantissa}e{int(exp)}"


def format_year_range(start: float, end: float) -> str:
    return f"{round_half_up(start)} - {round_half_up(end)}"


@dataclass(frozen=True)
class AnalysisReportRow:
    """One fitted regime in the summary table."""

    region: str
    a: float
    k: float
    range_start: float
    range_end: float
    singularity: int
    proximity: int | None
    takeoff: str  # "X" = tested, none found; a year string if found; "" = not tested

    @classmethod
    def from_fit(cls, region, fit: HyperbolicFit, proximity=None, takeoff=""):
        return cls(
            region=region,
            a=fit.model.a,
            k=fit.model.k,
            range_start=fit.window.start_year,
            range_end=fit.window.end_year,
            singularity=round_half_up(fit.model.singularity_year),
            proximity=proximity,
            takeoff=takeoff,
        )


@dataclass(frozen=True)
class RegionErrorEntry:
    region: str
    message: str


def _takeoff_cell(series: YearValueSeries, takeoff_year, config: TakeoffConfig,
                  halfwidth: float = 50.0) -> str:
    if takeoff_year is None:
        return ""
    try:
        result = takeoff_test(series, TakeoffHypothesis(takeoff_year, halfwidth), config)
    except TooFewPointsError:
        return ""
    if result.positive:
        return str(round_half_up(result.break_year))
    return "X"


def _analyze_single(series, cfg, weighting, takeoff_config):
    if cfg.window is not None:
        window = FitWindow(*cfg.window)
        fit = fit_hyperbolic(series, window, weighting)
    else:
        ranked = scan_windows(series, weighting=weighting)
        if not ranked:
            raise FitError(f"no hyperbolic window found for {series.label!r}")
        fit = ranked[0]
    prox = None
    if series.after(fit.window.end_year) is not None:
        finding = detect_diversion(series, fit)
        if finding is not None and finding.direction == "slower":
            prox = finding.proximity_years
    takeoff = _takeoff_cell(series, cfg.takeoff_year, takeoff_config, cfg.takeoff_halfwidth)
    return [AnalysisReportRow.from_fit(series.label, fit, prox, takeoff)]


def _analyze_two_regime(series, cfg, weighting, takeoff_config):
    span = series
    if cfg.window is not None:
        span = series.slice_window(*cfg.window)
    seg = segment_two_hyperbolic(span, weighting=weighting)
    rows = []
    hyper = seg.hyperbolic_segments()
    for i, segment in enumerate(hyper):
        last = segment is hyper[-1]
        prox = None
        takeoff = ""
        if last:
            # Diversion and takeoff are judged against the latest regime only;
            # everything after an earlier regime is the next regime itself.
            if series.after(segment.window.end_year) is not None:
                finding = detect_diversion(series, segment.fit)
                if finding is not None and finding.direction == "slower":
                    prox = finding.proximity_years
            takeoff = _takeoff_cell(series, cfg.takeoff_year, takeoff_config, cfg.takeoff_halfwidth)
        rows.append(AnalysisReportRow.from_fit(series.label, segment.fit, prox, takeoff))
    if not rows:
        raise FitError(f"no hyperbolic regime found for {series.label!r}")
    return rows


def run_analysis(
    table: DatasetTable,
    config: AnalysisConfigFile,
    weighting: str = "uniform",
    takeoff_config: TakeoffConfig = TakeoffConfig(),
) -> tuple[list[AnalysisReportRow], list[RegionErrorEntry]]:
    """Run the full per-region pipeline; never aborts on a single region."""
    rows: list[AnalysisReportRow] = []
    errors: list[RegionErrorEntry] = []
    for cfg in config.regions:
        try:
            series = build_region_series(table, cfg.definition)
            analyze = _analyze_two_regime if cfg.two_regime else _analyze_single
            rows.extend(analyze(series, cfg, weighting, takeoff_config))
        except HypergrowthError as exc:
            errors.append(RegionErrorEntry(cfg.definition.name, str(exc)))
    return rows, errors


def render_report(rows, fmt: str = "json") -> bytes:
    """Serialize report rows; deterministic byte output per format."""
    if fmt == "json":
        doc = {
            "schema_version": SCHEMA_VERSION,
            "rows": [asdict(r) for r in rows],
        }
        return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")
    if fmt == "csv":
        lines = ["region,a,k,range_start,range_end,singularity,proximity,takeoff"]
        for r in rows:
            lines.append(
                ",".join(
                    [
                        f'"{r.region}"' if "," in r.region else r.region,
                        format_sci(r.a),
                        format_sci(r.k),
                        str(round_half_up(r.range_start)),
                        str(round_half_up(r.range_end)),
                        str(r.singularity),
                        "" if r.proximity is None else str(r.proximity),
                        r.takeoff,
                    ]
                )
            )
        return ("\n".join(lines) + "\n").encode("utf-8")
    if fmt == "markdown":
        lines = [
            "| Region | a | k | Hyperbolic Range | Singularity | Proximity | Takeoff |",
            "| --- | --- | --- | --- | --- | --- | --- |",
        ]
        for r in rows:
            lines.append(
                "| {} | {} | {} | {} | {} | {} | {} |".format(
                    r.region,
                    format_sci(r.a),
                    format_sci(r.k),
                    format_year_range(r.range_start, r.range_end),
                    r.singularity,
                    "" if r.proximity is None else r.proximity,
                    r.takeoff,
                )
            )
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


def parse_report_json(data: bytes) -> list[AnalysisReportRow]:
    """Inverse of render_report(fmt='json')."""
    doc = json.loads(data.decode("utf-8"))
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema_version {doc.get('schema_version')!r}")
    return [AnalysisReportRow(**row) for row in doc["rows"]]
