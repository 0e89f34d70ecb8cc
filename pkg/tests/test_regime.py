"""Diversion detection and two-regime segmentation."""

import numpy as np
import pytest

from hypergrowth import (
    FitWindow,
    GeneratorSpec,
    HyperbolicModel,
    NegativeProximityError,
    TooFewPointsError,
    YearValueSeries,
    detect_diversion,
    fit_hyperbolic,
    generate,
    proximity,
    segment_two_hyperbolic,
)
from hypergrowth.synth import spliced_models


class TestProximity:
    def test_world_values(self):
        assert proximity(HyperbolicModel(1.684e-2, 8.539e-6), 1955.0) == 17

    def test_asia_values(self):
        assert proximity(HyperbolicModel(2.303e-2, 1.129e-5), 1950.0) == 90

    def test_equal_years(self):
        model = HyperbolicModel(1.0, 0.001)  # singularity exactly 1000
        assert proximity(model, 1000.0) == 0

    def test_diversion_after_singularity_rejected(self):
        with pytest.raises(NegativeProximityError):
            proximity(HyperbolicModel(1.0, 0.001), 1500.0)


class TestDetectDiversion:
    def test_on_model_extension_has_no_diversion(self):
        years = tuple(float(y) for y in range(0, 951, 10))
        s = generate(GeneratorSpec("hyperbolic", {"a": 1.0, "k": 0.001}, years,
                                   noise=0.01, seed=4))
        fit = fit_hyperbolic(s, FitWindow(0.0, 700.0))
        assert detect_diversion(s, fit) is None

    def test_spliced_slower_found_at_splice(self):
        years = tuple(float(y) for y in range(980, 1000))
        spec = GeneratorSpec(
            "hyperbolic-then-slower",
            {"a": 1.0, "k": 0.001, "break_year": 995.0, "slow_factor": 0.1},
            years, noise=0.01, seed=8,
        )
        s = generate(spec)
        fit = fit_hyperbolic(s, FitWindow(980.0, 995.0))
        finding = detect_diversion(s, fit)
        assert finding is not None
        assert finding.direction == "slower"
        assert abs(finding.year - 995.0) <= 1.0
        assert len(finding.evidence) == 2
        assert all(r.delta > 0 for r in finding.evidence)

    def test_faster_departure_detected_with_flipped_sign(self):
        # A series that accelerates beyond the fitted trajectory bends the
        # reciprocals downward.
        years = np.arange(900.0, 1000.0)
        model_values = 1.0 / (1.0 - 0.001 * np.minimum(years, 980.0))
        boost = np.where(years > 980.0, np.exp(0.2 * (years - 980.0)), 1.0)
        s = YearValueSeries(years, model_values * boost)
        fit = fit_hyperbolic(s, FitWindow(900.0, 980.0))
        finding = detect_diversion(s, fit)
        assert finding is not None
        assert finding.direction == "faster"
        assert finding.proximity_years is None

    def test_exact_data_uses_absolute_fallback(self):
        years = tuple(float(y) for y in range(0, 981, 10))
        s = generate(
            GeneratorSpec(
                "hyperbolic-then-slower",
                {"a": 1.0, "k": 0.001, "break_year": 900.0, "slow_factor": 0.5},
                years,
            )
        )
        fit = fit_hyperbolic(s, FitWindow(0.0, 900.0))
        finding = detect_diversion(s, fit)
        assert finding is not None
        assert finding.direction == "slower"
        assert finding.year == 910.0

    def test_requires_points_beyond_window(self):
        s = generate(
            GeneratorSpec("hyperbolic", {"a": 1.0, "k": 0.001},
                          tuple(float(y) for y in range(0, 901, 100)))
        )
        fit = fit_hyperbolic(s, FitWindow(0.0, 900.0))
        with pytest.raises(TooFewPointsError):
            detect_diversion(s, fit)


SPLICE = {"a": 0.242, "k": 1e-4, "break_year": 1820.0, "k_ratio": 4.2}


class TestSegmentation:
    def test_exact_breakpoint_recovery(self):
        years = tuple(float(y) for y in range(1000, 1951, 5))
        s = generate(GeneratorSpec("spliced-two-hyperbolic", SPLICE, years))
        seg = segment_two_hyperbolic(s)
        assert seg.breakpoint_year == 1820.0
        m1, m2 = spliced_models(SPLICE)
        segs = seg.hyperbolic_segments()
        assert len(segs) == 2
        assert segs[0].fit.model.a == pytest.approx(m1.a, rel=1e-9)
        assert segs[0].fit.model.k == pytest.approx(m1.k, rel=1e-9)
        assert segs[1].fit.model.a == pytest.approx(m2.a, rel=1e-9)
        assert segs[1].fit.model.k == pytest.approx(m2.k, rel=1e-9)
        assert seg.k_ratio == pytest.approx(4.2, rel=1e-9)

    def test_single_regime_k_ratio_centred_on_one(self):
        # A genuine single regime gives no systematic contrast between the
        # two sides; individual splits are noisy (small segments overfit),
        # so the claim is about the ensemble, not each trial.
        years = tuple(float(y) for y in range(1000, 1901, 2))
        ratios = []
        for seed in range(50):
            s = generate(
                GeneratorSpec("hyperbolic", {"a": 0.242, "k": 1e-4}, years,
                              noise=0.01, seed=seed)
            )
            seg = segment_two_hyperbolic(s)
            if seg.k_ratio is not None:
                ratios.append(seg.k_ratio)
        assert len(ratios) >= 40
        assert 0.9 <= float(np.median(ratios)) <= 1.1

    def test_insufficient_points(self):
        s = generate(
            GeneratorSpec("hyperbolic", {"a": 1.0, "k": 0.001},
                          tuple(float(y) for y in range(0, 500, 100)))
        )
        with pytest.raises(TooFewPointsError):
            segment_two_hyperbolic(s)

    def test_unit_rescaling_preserves_breakpoint_and_ratio(self):
        years = tuple(float(y) for y in range(1000, 1951, 10))
        s = generate(GeneratorSpec("spliced-two-hyperbolic", SPLICE, years,
                                   noise=0.005, seed=3))
        seg1 = segment_two_hyperbolic(s)
        seg2 = segment_two_hyperbolic(YearValueSeries(s.years, s.values * 1e3))
        assert seg1.breakpoint_year == seg2.breakpoint_year
        assert seg1.k_ratio == pytest.approx(seg2.k_ratio, rel=1e-9)
