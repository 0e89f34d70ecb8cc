"""Diversion detection and two-regime segmentation.

A diversion is a systematic departure of observed reciprocals from the fitted
line after the fit window: upward bending (positive reciprocal residuals)
means the growth fell onto a slower trajectory, downward bending a faster
one.  Detection compares post-window residuals against a robust scale
estimated from the in-window residuals, so the training window itself can
never fire.

Segmentation splits a series into two hyperbolic regimes at the observed year
minimizing the total squared reciprocal residual of the two side fits, the
pattern seen where a slow hyperbolic growth hands over to a distinctly faster
one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FitError, NegativeProximityError, TooFewPointsError
from .fit import FitWindow, HyperbolicFit, fit_hyperbolic
from .model import (
    HyperbolicModel,
    ReciprocalResidual,
    reciprocal_line,
    round_half_up,
)
from .series import YearValueSeries

# MAD -> sigma for a normal distribution.
_MAD_TO_SIGMA = 1.4826


@dataclass(frozen=True)
class DiversionFinding:
    """First year of systematic departure from a fitted trajectory."""

    year: float
    direction: str  # "slower" | "faster"
    evidence: tuple[ReciprocalResidual, ...]
    proximity_years: int | None  # only meaningful for direction == "slower"


def proximity(model: HyperbolicModel, diversion_year: float) -> int:
    """Integer years between the singularity and the diversion.

    Both years are rounded half-up before subtracting.  A negative result is
    an error: a slower diversion after the singularity is impossible.
    """
    p = round_half_up(model.singularity_year) - round_half_up(diversion_year)
    if p < 0:
        raise NegativeProximityError(
            f"diversion year {diversion_year} lies after the singularity "
            f"{model.singularity_year:.6g}"
        )
    return p


def _robust_scale(deltas: np.ndarray, fallback: float) -> float:
    mad = float(np.median(np.abs(deltas - np.median(deltas))))
    scale = _MAD_TO_SIGMA * mad
    return scale if scale > 0 else fallback


def detect_diversion(
    series: YearValueSeries,
    fit: HyperbolicFit,
    m: int = 2,
    tau: float = 3.0,
) -> DiversionFinding | None:
    """First post-window run of m same-sign residuals beyond tau * scale.

    Scanning forward from the window end, reports the first year opening a
    run of at least ``m`` consecutive reciprocal residuals that share a sign
    and each exceed tau times the robust (MAD-based) scale of the in-window
    residuals.  When the in-window residuals vanish (exact data) the scale
    falls back to 1e-9 times the largest in-window reciprocal.  Returns None
    when no qualifying run exists.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    tail = series.after(fit.window.end_year)
    if tail is None:
        raise TooFewPointsError("series does not extend beyond the fit window")

    in_deltas = fit.residual_deltas()
    max_recip = max(r.observed_reciprocal for r in fit.residuals)
    scale = _robust_scale(in_deltas, fallback=1e-9 * max_recip)
    threshold = tau * scale

    recips = 1.0 / tail.values
    fitted = reciprocal_line(fit.model, tail.years)
    deltas = recips - fitted
    signs = np.sign(deltas)
    exceeds = np.abs(deltas) > threshold

    n = len(deltas)
    for i in range(n - m + 1):
        run = slice(i, i + m)
        if exceeds[run].all() and np.all(signs[run] == signs[i]) and signs[i] != 0:
            direction = "slower" if signs[i] > 0 else "faster"
            evidence = tuple(
                ReciprocalResidual(float(y), float(r), float(f))
                for y, r, f in zip(tail.years[run], recips[run], fitted[run])
            )
            year = float(tail.years[i])
            prox = proximity(fit.model, year) if direction == "slower" else None
            return DiversionFinding(year, direction, evidence, prox)
    return None


@dataclass(frozen=True)
class Segment:
    """One span of a segmentation: a fitted regime or an unmodeled stretch."""

    window: FitWindow
    kind: str  # "hyperbolic" | "unmodeled"
    fit: HyperbolicFit | None = None


@dataclass(frozen=True)
class RegimeSegmentation:
    """Ordered, non-overlapping segments covering the analyzed span."""

    segments: tuple[Segment, ...]
    breakpoint_year: float
    k_ratio: float | None  # k_second / k_first when both sides are valid
    total_sse: float

    def hyperbolic_segments(self) -> list[Segment]:
        return [s for s in self.segments if s.kind == "hyperbolic"]


def _side_sse(fit: HyperbolicFit) -> float:
    return float((fit.residual_deltas() ** 2).sum())


def segment_two_hyperbolic(
    series: YearValueSeries,
    min_points: int = 3,
    weighting: str = "uniform",
) -> RegimeSegmentation:
    """Best split of the series into two hyperbolic regimes.

    Exhaustive search over breakpoints at observed years; the breakpoint year
    belongs to both sides, matching a spliced series whose splice point lies
    on both reciprocal lines.  Objective is the total squared reciprocal
    residual; ties go to the earliest breakpoint.  A side whose fit fails
    becomes an unmodeled segment and contributes nothing to the k-ratio.
    """
    min_points = max(min_points, 3)
    if len(series) < 2 * min_points:
        raise TooFewPointsError(
            f"two-regime segmentation needs >= {2 * min_points} points, got {len(series)}"
        )
    years = series.years
    best = None
    # Breakpoint must leave min_points on each side (shared point included).
    for bi in range(min_points - 1, len(years) - min_points + 1):
        b = float(years[bi])
        left_w = FitWindow(float(years[0]), b)
        right_w = FitWindow(b, float(years[-1]))
        sides = []
        sse = 0.0
        for w in (left_w, right_w):
            try:
                f = fit_hyperbolic(series, w, weighting)
                sides.append(Segment(w, "hyperbolic", f))
                sse += _side_sse(f)
            except FitError:
                sides.append(Segment(w, "unmodeled"))
                # An unfittable side is penalized by the residuals around its
                # own mean reciprocal, so fully-modeled splits win when they
                # exist.
                sub = series.slice_window(w.start_year, w.end_year)
                r = 1.0 / sub.values
                sse += float(((r - r.mean()) ** 2).sum())
        n_valid = sum(1 for s in sides if s.kind == "hyperbolic")
        cand = (sse, -n_valid, b)
        if best is None or cand < best[0]:
            best = (cand, sides, b, sse)
    cand, sides, b, sse = best
    k_ratio = None
    if all(s.kind == "hyperbolic" for s in sides):
        k_ratio = sides[1].fit.model.k / sides[0].fit.model.k
    return RegimeSegmentation(tuple(sides), b, k_ratio, sse)
