"""Self-contained verification suite.

Every check here runs without external data, using either published
reference results of the historical-GDP analysis this package reproduces
(parameter pairs, singularities, diversion years for the world and seven
regional series) or synthetic series whose ground truth is known by
construction.  The CLI ``verify`` verb and the pytest acceptance module both
drive these functions.

The one data-dependent reproduction check (refitting the world series from a
Maddison-2010 CSV export) lives in :func:`check_world_reproduction` and is
exercised only when such a file is supplied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fit import FitWindow, fit_hyperbolic, goodness
from .ingest import parse_long_csv, parse_wide_table, RegionDefinition, build_region_series
from .model import HyperbolicModel, reciprocal_delta, round_half_up
from .regime import detect_diversion, proximity, segment_two_hyperbolic
from .series import YearValueSeries
from .synth import GeneratorSpec, generate, maddison_year_grid, spliced_models
from .takeoff import TakeoffHypothesis, takeoff_test


@dataclass(frozen=True)
class ReferenceRow:
    """One published reference result row."""

    region: str
    a: float
    k: float
    range_start: float
    range_end: float
    singularity: int
    diversion_year: float | None = None
    proximity: int | None = None


REFERENCE_ROWS: tuple[ReferenceRow, ...] = (
    ReferenceRow("World", 1.684e-2, 8.539e-6, 1000, 1955, 1972, 1955, 17),
    ReferenceRow("Western Europe", 9.859e-2, 5.112e-5, 1500, 1900, 1929, 1900, 29),
    ReferenceRow("Western Europe (4)", 3.821e-1, 1.986e-4, 1, 1875, 1923, 1875, 48),
    ReferenceRow("Eastern Europe", 7.749e-1, 4.048e-4, 1000, 1890, 1915, 1890, 25),
    ReferenceRow("Former USSR", 6.547e-1, 3.452e-4, 1, 1870, 1897, 1870, 27),
    ReferenceRow("Asia", 2.303e-2, 1.129e-5, 1000, 1950, 2040, 1950, 90),
    ReferenceRow("Africa (first regime)", 1.244e-1, 5.030e-5, 1, 1820, 2473),
    ReferenceRow("Africa (second regime)", 4.192e-1, 2.126e-4, 1820, 1950, 1972, 1950, 22),
    ReferenceRow("Latin America (first regime)", 4.421e-1, 2.093e-4, 1, 1500, 2113),
    ReferenceRow("Latin America (second regime)", 1.570e0, 8.224e-4, 1600, 1870, 1910, 1870, 40),
)

REFERENCE_K_RATIOS = (
    ("Africa", 2.126e-4, 5.030e-5, 4.2),
    ("Latin America", 8.224e-4, 2.093e-4, 3.9),
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def check_singularity_arithmetic() -> CheckResult:
    """round(a/k) matches the published singularity within +-1 year."""
    failures = []
    for row in REFERENCE_ROWS:
        computed = round_half_up(HyperbolicModel(row.a, row.k).singularity_year)
        if abs(computed - row.singularity) > 1:
            failures.append(f"{row.region}: {computed} != {row.singularity}")
    return CheckResult(
        "singularity arithmetic (10 reference rows, +-1 year)",
        not failures,
        "; ".join(failures) or f"all {len(REFERENCE_ROWS)} rows match",
    )


def check_proximity_reproduction() -> CheckResult:
    """Published singularity minus diversion year equals the stated proximity."""
    failures = []
    checked = 0
    for row in REFERENCE_ROWS:
        if row.diversion_year is None:
            continue
        checked += 1
        direct = row.singularity - round_half_up(row.diversion_year)
        via_model = proximity(HyperbolicModel(row.a, row.k), row.diversion_year)
        if abs(direct - row.proximity) > 1 or abs(via_model - row.proximity) > 1:
            failures.append(
                f"{row.region}: {direct}/{via_model} != {row.proximity}"
            )
    return CheckResult(
        "proximity reproduction (8 diversions, +-1 year)",
        not failures,
        "; ".join(failures) or f"all {checked} proximities match",
    )


def check_k_ratios() -> CheckResult:
    """Second-to-first-regime k ratios match the published factors +-0.05."""
    failures = []
    for region, k2, k1, expected in REFERENCE_K_RATIOS:
        ratio = k2 / k1
        if abs(ratio - expected) > 0.05:
            failures.append(f"{region}: {ratio:.3f} != {expected}")
    return CheckResult(
        "two-regime k ratios (+-0.05)",
        not failures,
        "; ".join(failures) or "4.2 and 3.9 reproduced",
    )


def check_parameter_recovery_exact() -> CheckResult:
    """Noiseless hyperbolic data on the sparse grid recovers (a, k) to 1e-9."""
    a, k = 1.0, 4.0e-4  # singularity 2500, past the grid's last year
    grid = maddison_year_grid()
    series = generate(GeneratorSpec("hyperbolic", {"a": a, "k": k}, tuple(grid)))
    failures = []
    for weighting in ("uniform", "direct"):
        fit = fit_hyperbolic(series, FitWindow(grid[0], grid[-1]), weighting)
        err_a = abs(fit.model.a - a) / a
        err_k = abs(fit.model.k - k) / k
        if err_a > 1e-9 or err_k > 1e-9:
            failures.append(f"{weighting}: rel err a={err_a:.2e} k={err_k:.2e}")
    return CheckResult(
        "exact parameter recovery (noiseless, both weightings, 1e-9 rel)",
        not failures,
        "; ".join(failures) or "recovered to 1e-9 relative",
    )


def check_parameter_recovery_noisy(trials: int = 1000) -> CheckResult:
    """1% multiplicative noise, 30 points: (a, k) within 2% in >= 95% of trials."""
    a, k = 1.0, 1.0e-3
    years = tuple(float(y) for y in range(0, 900, 30))  # 30 points, well clear of 1000
    window = FitWindow(years[0], years[-1])
    hits = 0
    for seed in range(trials):
        spec = GeneratorSpec("hyperbolic", {"a": a, "k": k}, years, noise=0.01, seed=seed)
        fit = fit_hyperbolic(generate(spec), window)
        if abs(fit.model.a - a) / a < 0.02 and abs(fit.model.k - k) / k < 0.02:
            hits += 1
    rate = hits / trials
    return CheckResult(
        f"noisy parameter recovery (2% in >= 95% of {trials} trials)",
        rate >= 0.95,
        f"success rate {rate:.1%}",
    )


def _diversion_scenario(seed: int, spliced: bool):
    years = tuple(float(y) for y in range(980, 1000))
    params = {"a": 1.0, "k": 1.0e-3}
    if spliced:
        kind = "hyperbolic-then-slower"
        params |= {"break_year": 995.0, "slow_factor": 0.1}
    else:
        kind = "hyperbolic"
    spec = GeneratorSpec(kind, params, years, noise=0.01, seed=seed)
    series = generate(spec)
    fit = fit_hyperbolic(series, FitWindow(980.0, 995.0))
    return detect_diversion(series, fit)


def check_diversion_detection(trials: int = 1000) -> CheckResult:
    """Spliced series: detection within one year of the splice, >= 95%;
    pure hyperbolic: no finding in >= 99%; direction always slower."""
    detected = 0
    wrong_direction = 0
    for seed in range(trials):
        finding = _diversion_scenario(seed, spliced=True)
        if finding is not None and finding.direction != "slower":
            wrong_direction += 1
        if (
            finding is not None
            and finding.direction == "slower"
            and abs(finding.year - 995.0) <= 1.0
        ):
            detected += 1
    false_pos = sum(
        1 for seed in range(trials) if _diversion_scenario(seed + trials, spliced=False) is not None
    )
    hit_rate = detected / trials
    fp_rate = false_pos / trials
    passed = hit_rate >= 0.95 and fp_rate <= 0.01 and wrong_direction == 0
    return CheckResult(
        f"diversion detection ({trials} trials each way)",
        passed,
        f"hit rate {hit_rate:.1%}, false-positive rate {fp_rate:.1%}, "
        f"wrong direction {wrong_direction}",
    )


_SPLICE_PARAMS = {"a": 0.242, "k": 1.0e-4, "break_year": 1820.0, "k_ratio": 4.2}


def check_two_regime_exact() -> CheckResult:
    """Noiseless spliced series: exact breakpoint, parameters to 1e-9 rel."""
    years = tuple(float(y) for y in range(1000, 1951, 5))
    series = generate(GeneratorSpec("spliced-two-hyperbolic", _SPLICE_PARAMS, years))
    seg = segment_two_hyperbolic(series)
    m1, m2 = spliced_models(_SPLICE_PARAMS)
    problems = []
    if seg.breakpoint_year != 1820.0:
        problems.append(f"breakpoint {seg.breakpoint_year} != 1820")
    segs = seg.hyperbolic_segments()
    if len(segs) != 2:
        problems.append(f"{len(segs)} hyperbolic segments, expected 2")
    else:
        for name, fitted, truth in (
            ("first", segs[0].fit.model, m1),
            ("second", segs[1].fit.model, m2),
        ):
            for p in ("a", "k"):
                rel = abs(getattr(fitted, p) - getattr(truth, p)) / getattr(truth, p)
                if rel > 1e-9:
                    problems.append(f"{name} regime {p} rel err {rel:.2e}")
    return CheckResult(
        "two-regime exact recovery (noiseless, 1e-9 rel)",
        not problems,
        "; ".join(problems) or "breakpoint 1820 and both models recovered",
    )


def check_two_regime_noisy(seed: int = 42) -> CheckResult:
    """1% noise, annual sampling: recovered k-ratio within 1% of 4.2."""
    years = tuple(float(y) for y in range(1000, 1951))
    spec = GeneratorSpec(
        "spliced-two-hyperbolic", _SPLICE_PARAMS, years, noise=0.01, seed=seed
    )
    seg = segment_two_hyperbolic(generate(spec))
    if seg.k_ratio is None:
        return CheckResult("two-regime noisy k-ratio (1%)", False, "no valid k-ratio")
    rel = abs(seg.k_ratio - 4.2) / 4.2
    return CheckResult(
        "two-regime noisy k-ratio (within 1% of 4.2)",
        rel < 0.01,
        f"recovered ratio {seg.k_ratio:.4f} (rel err {rel:.2%}), "
        f"breakpoint {seg.breakpoint_year:g}",
    )


def _takeoff_grid() -> tuple[float, ...]:
    grid = sorted(set(maddison_year_grid()) | {1750.0})
    return tuple(grid)


def _stagnation_series(scale=1.0, shift=0.0) -> YearValueSeries:
    years = tuple(y + shift for y in _takeoff_grid())
    spec = GeneratorSpec(
        "stagnation-then-takeoff",
        {"level": scale, "break_year": 1750.0 + shift, "rate": 0.02},
        years,
    )
    return generate(spec)


def _hyperbolic_series(scale=1.0, shift=0.0) -> YearValueSeries:
    base_years = tuple(y for y in _takeoff_grid() if y < 1971)
    spec = GeneratorSpec("hyperbolic", {"a": 1.684e-2, "k": 8.539e-6}, base_years)
    s = generate(spec)
    return YearValueSeries(s.years + shift, s.values * scale, s.label)


def check_takeoff_verdicts() -> CheckResult:
    """Positive on the stagnation-takeoff shape at 1750, negative on
    hyperbolic and constant shapes; stable under rescaling and year shifts."""
    problems = []
    for scale, shift in ((1.0, 0.0), (1e3, 0.0), (1.0, 100.0), (1.0, -100.0)):
        hyp = TakeoffHypothesis(1750.0 + shift)
        r = takeoff_test(_stagnation_series(scale, shift), hyp)
        if not r.positive:
            problems.append(f"stagnation-takeoff negative at scale={scale} shift={shift}")
        elif abs(r.break_year - (1750.0 + shift)) > hyp.search_halfwidth:
            problems.append(f"break {r.break_year} outside halfwidth (shift={shift})")
        r = takeoff_test(_hyperbolic_series(scale, shift), hyp)
        if r.positive:
            problems.append(f"pure hyperbolic positive at scale={scale} shift={shift}")
        const_years = tuple(y + shift for y in _takeoff_grid())
        const = generate(GeneratorSpec("constant", {"level": 5.0 * scale}, const_years))
        r = takeoff_test(const, hyp)
        if r.positive:
            problems.append(f"constant series positive at scale={scale} shift={shift}")
    return CheckResult(
        "takeoff verdicts (positive/negative + rescale/shift stability)",
        not problems,
        "; ".join(problems) or "all verdicts correct and stable",
    )


def check_reciprocal_delta_identity(n: int = 1_000_000, seed: int = 7) -> CheckResult:
    """-(s2-s1)/(s1*s2) equals 1/s2 - 1/s1 to 1e-12 relative, 1e6 pairs."""
    rng = np.random.default_rng(seed)
    s1 = np.exp(rng.uniform(-6, 6, n))
    s2 = np.exp(rng.uniform(-6, 6, n))
    product_form = reciprocal_delta(s1, s2)
    direct = 1.0 / s2 - 1.0 / s1
    # Both forms approach zero when s1 ~ s2, so "relative" is judged against
    # the reciprocal magnitudes, the natural scale of the identity.
    scale = np.maximum(1.0 / s1, 1.0 / s2)
    max_rel = float(np.max(np.abs(product_form - direct) / scale))
    return CheckResult(
        f"reciprocal-difference identity ({n} pairs, 1e-12 rel)",
        max_rel < 1e-12,
        f"max relative discrepancy {max_rel:.2e}",
    )


def run_all_checks(trials: int = 1000) -> list[CheckResult]:
    """The full data-free acceptance battery, in criteria order."""
    return [
        check_singularity_arithmetic(),
        check_proximity_reproduction(),
        check_k_ratios(),
        check_parameter_recovery_exact(),
        check_parameter_recovery_noisy(trials),
        check_diversion_detection(trials),
        check_two_regime_exact(),
        check_two_regime_noisy(),
        check_takeoff_verdicts(),
        check_reciprocal_delta_identity(),
    ]


def check_world_reproduction(data: bytes, wide: bool = False, unit_scale: float = 1e-3) -> CheckResult:
    """Optional data-dependent check against a Maddison-2010 world GDP export.

    Expects the world aggregate under an entity named 'World'; values in
    millions unless unit_scale says otherwise.  Refits 1000-1955 and checks
    parameters within 5% of the reference, a slower diversion in [1950,
    1960], and an AD 1 relative deviation in [70%, 85%].
    """
    table = parse_wide_table(data, unit_scale) if wide else parse_long_csv(data, unit_scale)
    series = build_region_series(table, RegionDefinition("World", ("World",)))
    fit = fit_hyperbolic(series, FitWindow(1000.0, 1955.0))
    ref = REFERENCE_ROWS[0]
    problems = []
    if abs(fit.model.a - ref.a) / ref.a > 0.05:
        problems.append(f"a {fit.model.a:.4e} not within 5% of {ref.a:.4e}")
    if abs(fit.model.k - ref.k) / ref.k > 0.05:
        problems.append(f"k {fit.model.k:.4e} not within 5% of {ref.k:.4e}")
    finding = detect_diversion(series, fit)
    if finding is None or finding.direction != "slower" or not (1950 <= finding.year <= 1960):
        problems.append(f"diversion {finding} not a slower departure in [1950, 1960]")
    dev = goodness(fit, series).deviation_at(1.0)
    if dev is None or not (70.0 <= dev <= 85.0):
        problems.append(f"AD 1 deviation {dev} outside [70%, 85%]")
    return CheckResult(
        "world-series reproduction (data-dependent)",
        not problems,
        "; ".join(problems) or "parameters, diversion and AD 1 deviation reproduced",
    )
