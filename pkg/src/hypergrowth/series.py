"""Ordered (year, value) observation series.

Years are real-valued Gregorian year numbers (AD 1 = 1); values are GDP in
billions of 1990 Geary-Khamis dollars.  Gaps between observations are allowed
and preserved: nothing in this package ever interpolates across them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SeriesError


@dataclass(frozen=True)
class YearValueSeries:
    """Immutable, strictly-increasing series of positive observations.

    Parameters
    ----------
    years : array-like of float
        Strictly increasing calendar years, no duplicates.
    values : array-like of float
        Strictly positive values, same length as ``years``.
    label : str
        Free-text identifier (region name, generator tag, ...).
    """

    years: np.ndarray
    values: np.ndarray
    label: str = ""

    def __post_init__(self):
        years = np.asarray(self.years, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "years", years)
        object.__setattr__(self, "values", values)
        if years.ndim != 1 or values.ndim != 1:
            raise SeriesError("years and values must be one-dimensional")
        if len(years) != len(values):
            raise SeriesError("years and values must have the same length")
        if len(years) < 1:
            raise SeriesError("series must contain at least one observation")
        if not np.all(np.isfinite(years)) or not np.all(np.isfinite(values)):
            raise SeriesError("years and values must be finite")
        if np.any(np.diff(years) <= 0):
            raise SeriesError("years must be strictly increasing (no duplicates)")
        if np.any(values <= 0):
            raise SeriesError("all values must be strictly positive")
        years.setflags(write=False)
        values.setflags(write=False)

    def __len__(self) -> int:
        return len(self.years)

    def __eq__(self, other) -> bool:
        if not isinstance(other, YearValueSeries):
            return NotImplemented
        return (
            self.label == other.label
            and np.array_equal(self.years, other.years)
            and np.array_equal(self.values, other.values)
        )

    def points(self) -> list[tuple[float, float]]:
        """Return the observations as a list of (year, value) tuples."""
        return list(zip(self.years.tolist(), self.values.tolist()))

    def slice_window(self, start_year: float, end_year: float) -> "YearValueSeries":
        """Sub-series with start_year <= year <= end_year (inclusive)."""
        mask = (self.years >= start_year) & (self.years <= end_year)
        if not mask.any():
            raise SeriesError(
                f"no observations in window [{start_year}, {end_year}]"
            )
        return YearValueSeries(self.years[mask], self.values[mask], self.label)

    def after(self, year: float) -> "YearValueSeries | None":
        """Sub-series strictly after ``year``, or None if empty."""
        mask = self.years > year
        if not mask.any():
            return None
        return YearValueSeries(self.years[mask], self.values[mask], self.label)

    def with_label(self, label: str) -> "YearValueSeries":
        return YearValueSeries(self.years, self.values, label)
