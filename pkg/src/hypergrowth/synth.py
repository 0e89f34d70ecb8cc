"""Deterministic synthetic-series generators.

Every detector in this package is validated against series whose ground truth
is known by construction.  Generators are pure functions of (spec, seed):
identical inputs produce bit-identical output.  Noise, when requested, is
multiplicative log-normal, exp(N(0, sigma^2)) per point, so values stay
positive across the four orders of magnitude a GDP series can span.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GeneratorError
from .model import HyperbolicModel, evaluate
from .series import YearValueSeries

KINDS = (
    "hyperbolic",
    "constant",
    "exponential",
    "stagnation-then-takeoff",
    "spliced-two-hyperbolic",
    "hyperbolic-then-slower",
)

# Parameters required by each kind.  All must be positive reals except where
# noted in the generator functions.
_REQUIRED = {
    "hyperbolic": ("a", "k"),
    "constant": ("level",),
    "exponential": ("level", "rate"),
    "stagnation-then-takeoff": ("level", "break_year", "rate"),
    "spliced-two-hyperbolic": ("a", "k", "break_year", "k_ratio"),
    "hyperbolic-then-slower": ("a", "k", "break_year", "slow_factor"),
}


@dataclass(frozen=True)
class GeneratorSpec:
    """Recipe for one synthetic series.

    ``parameters`` are kind-specific (see _REQUIRED); ``noise`` is the sigma
    of the per-point multiplicative log-normal factor; ``seed`` feeds a
    dedicated PCG64 stream so runs are reproducible.
    """

    kind: str
    parameters: dict
    sample_years: tuple
    noise: float = 0.0
    seed: int = 0
    label: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GeneratorError(f"unknown generator kind {self.kind!r}")
        years = np.asarray(self.sample_years, dtype=float)
        if len(years) < 1 or np.any(np.diff(years) <= 0):
            raise GeneratorError("sample_years must be non-empty and strictly increasing")
        missing = [p for p in _REQUIRED[self.kind] if p not in self.parameters]
        if missing:
            raise GeneratorError(f"{self.kind} requires parameters {missing}")
        for name in _REQUIRED[self.kind]:
            v = self.parameters[name]
            if not (math.isfinite(v) and v > 0):
                raise GeneratorError(f"parameter {name} must be finite and positive, got {v}")
        if not (self.noise >= 0 and math.isfinite(self.noise)):
            raise GeneratorError("noise sigma must be finite and >= 0")
        object.__setattr__(self, "sample_years", tuple(years.tolist()))


def _exact_values(spec: GeneratorSpec, years: np.ndarray) -> np.ndarray:
    p = spec.parameters
    if spec.kind == "hyperbolic":
        model = HyperbolicModel(p["a"], p["k"])
        if years[-1] >= model.singularity_year:
            raise GeneratorError(
                f"sample years reach the singularity at {model.singularity_year:.6g}"
            )
        return np.asarray(evaluate(model, years))
    if spec.kind == "constant":
        return np.full_like(years, p["level"])
    if spec.kind == "exponential":
        ref = p.get("ref_year", years[0])
        return p["level"] * np.exp(p["rate"] * (years - ref))
    if spec.kind == "stagnation-then-takeoff":
        b, r = p["break_year"], p["rate"]
        return np.where(years <= b, p["level"], p["level"] * np.exp(r * (years - b)))
    if spec.kind == "spliced-two-hyperbolic":
        return _spliced_values(p, years)
    if spec.kind == "hyperbolic-then-slower":
        return _slower_values(p, years)
    raise GeneratorError(f"unknown generator kind {spec.kind!r}")  # unreachable


def _spliced_values(p: dict, years: np.ndarray) -> np.ndarray:
    a1, k1, b, ratio = p["a"], p["k"], p["break_year"], p["k_ratio"]
    k2 = ratio * k1
    # Continuity of the reciprocal at the break: a2 - k2*b = a1 - k1*b.
    a2 = a1 + (k2 - k1) * b
    m1 = HyperbolicModel(a1, k1)
    m2 = HyperbolicModel(a2, k2)
    left = years <= b
    if left.any() and years[left][-1] >= m1.singularity_year:
        raise GeneratorError("first-regime sample years reach its singularity")
    if years[-1] >= m2.singularity_year:
        raise GeneratorError("second-regime sample years reach its singularity")
    out = np.empty_like(years)
    out[left] = evaluate(m1, years[left]) if left.any() else []
    out[~left] = evaluate(m2, years[~left]) if (~left).any() else []
    return out


def _slower_values(p: dict, years: np.ndarray) -> np.ndarray:
    a, k, b, f = p["a"], p["k"], p["break_year"], p["slow_factor"]
    if not f < 1:
        raise GeneratorError("slow_factor must be in (0, 1)")
    model = HyperbolicModel(a, k)
    if b >= model.singularity_year:
        raise GeneratorError("break_year must precede the singularity")
    left = years <= b
    if left.any() and years[left][-1] >= model.singularity_year:
        raise GeneratorError("sample years reach the singularity before the break")
    s_b = evaluate(model, b)
    # Post-break growth continues exponentially at a fraction of the model's
    # instantaneous log-growth rate k/(a - k*b) at the break.
    r = f * k / (a - k * b)
    out = np.empty_like(years)
    if left.any():
        out[left] = evaluate(model, years[left])
    if (~left).any():
        out[~left] = s_b * np.exp(r * (years[~left] - b))
    return out


def spliced_models(p: dict) -> tuple[HyperbolicModel, HyperbolicModel]:
    """The two exact models behind a spliced-two-hyperbolic spec."""
    a1, k1, b, ratio = p["a"], p["k"], p["break_year"], p["k_ratio"]
    k2 = ratio * k1
    return HyperbolicModel(a1, k1), HyperbolicModel(a1 + (k2 - k1) * b, k2)


def generate(spec: GeneratorSpec) -> YearValueSeries:
    """Sample the exact model on spec.sample_years, then apply noise."""
    years = np.asarray(spec.sample_years, dtype=float)
    values = _exact_values(spec, years)
    if spec.noise > 0:
        rng = np.random.default_rng(spec.seed)
        values = values * np.exp(rng.normal(0.0, spec.noise, size=len(years)))
    label = spec.label or spec.kind
    return YearValueSeries(years, values, label)


def maddison_year_grid() -> list[float]:
    """Sparse historical sampling grid of the Maddison (2010) tables.

    Isolated benchmark years up to 1913 (with the large AD 1 -> 1000 -> 1500
    gaps), then annual coverage 1950-2008.
    """
    head = [1.0, 1000.0, 1500.0, 1600.0, 1700.0, 1820.0, 1870.0, 1900.0, 1913.0]
    return head + [float(y) for y in range(1950, 2009)]
