"""Synthetic-series generators: exactness, determinism, grid structure."""

import numpy as np
import pytest

from hypergrowth import GeneratorError, GeneratorSpec, generate, maddison_year_grid
from hypergrowth.synth import spliced_models


def years(*args):
    return tuple(float(y) for y in args)


class TestGenerate:
    def test_noiseless_hyperbolic_is_exact(self):
        spec = GeneratorSpec(
            "hyperbolic", {"a": 1.0, "k": 0.001}, tuple(float(y) for y in range(0, 901, 100))
        )
        s = generate(spec)
        expected = 1.0 / (1.0 - 0.001 * s.years)
        np.testing.assert_allclose(s.values, expected, rtol=1e-15)

    def test_constant(self):
        s = generate(GeneratorSpec("constant", {"level": 5.0}, years(1, 1000, 1500)))
        assert np.all(s.values == 5.0)

    def test_spliced_halves_are_collinear(self):
        params = {"a": 0.242, "k": 1e-4, "break_year": 1820.0, "k_ratio": 4.2}
        spec = GeneratorSpec(
            "spliced-two-hyperbolic", params, tuple(float(y) for y in range(1000, 1951, 10))
        )
        s = generate(spec)
        m1, m2 = spliced_models(params)
        left = s.years <= 1820.0
        np.testing.assert_allclose(
            1.0 / s.values[left], m1.a - m1.k * s.years[left], rtol=1e-12
        )
        np.testing.assert_allclose(
            1.0 / s.values[~left], m2.a - m2.k * s.years[~left], rtol=1e-12
        )
        assert m2.k / m1.k == pytest.approx(4.2)

    def test_splice_point_on_both_lines(self):
        params = {"a": 0.242, "k": 1e-4, "break_year": 1820.0, "k_ratio": 4.2}
        m1, m2 = spliced_models(params)
        assert m1.a - m1.k * 1820.0 == pytest.approx(m2.a - m2.k * 1820.0, rel=1e-12)

    def test_seed_determinism(self):
        spec = GeneratorSpec(
            "hyperbolic", {"a": 1.0, "k": 0.001}, years(0, 100, 200), noise=0.05, seed=123
        )
        a, b = generate(spec), generate(spec)
        np.testing.assert_array_equal(a.values, b.values)

    def test_different_seeds_differ(self):
        base = dict(kind="hyperbolic", parameters={"a": 1.0, "k": 0.001},
                    sample_years=years(0, 100, 200), noise=0.05)
        a = generate(GeneratorSpec(**base, seed=1))
        b = generate(GeneratorSpec(**base, seed=2))
        assert not np.array_equal(a.values, b.values)

    def test_zero_noise_is_identity(self):
        base = dict(kind="hyperbolic", parameters={"a": 1.0, "k": 0.001},
                    sample_years=years(0, 100, 200))
        clean = generate(GeneratorSpec(**base))
        noiseless = generate(GeneratorSpec(**base, noise=0.0, seed=99))
        np.testing.assert_array_equal(clean.values, noiseless.values)

    def test_stagnation_then_takeoff_shape(self):
        spec = GeneratorSpec(
            "stagnation-then-takeoff",
            {"level": 2.0, "break_year": 1750.0, "rate": 0.02},
            years(1600, 1700, 1750, 1800, 1850),
        )
        s = generate(spec)
        assert np.all(s.values[:3] == 2.0)
        np.testing.assert_allclose(s.values[3], 2.0 * np.exp(0.02 * 50), rtol=1e-12)

    def test_hyperbolic_then_slower_is_continuous_and_slower(self):
        spec = GeneratorSpec(
            "hyperbolic-then-slower",
            {"a": 1.0, "k": 0.001, "break_year": 900.0, "slow_factor": 0.5},
            tuple(float(y) for y in range(850, 991, 10)),
        )
        s = generate(spec)
        hyperbolic = 1.0 / (1.0 - 0.001 * s.years)
        post = s.years > 900.0
        assert np.all(s.values[post] < hyperbolic[post])
        assert np.all(np.diff(s.values) > 0)


class TestInvalidSpecs:
    def test_years_at_singularity_rejected(self):
        with pytest.raises(GeneratorError):
            generate(GeneratorSpec("hyperbolic", {"a": 1.0, "k": 0.001}, years(0, 1000)))

    def test_nonpositive_parameter_rejected(self):
        with pytest.raises(GeneratorError):
            GeneratorSpec("constant", {"level": 0.0}, years(0, 1))

    def test_unknown_kind_rejected(self):
        with pytest.raises(GeneratorError):
            GeneratorSpec("logistic", {"level": 1.0}, years(0, 1))

    def test_unsorted_years_rejected(self):
        with pytest.raises(GeneratorError):
            GeneratorSpec("constant", {"level": 1.0}, (10.0, 5.0))

    def test_missing_parameter_rejected(self):
        with pytest.raises(GeneratorError):
            GeneratorSpec("hyperbolic", {"a": 1.0}, years(0, 1))


class TestMaddisonGrid:
    def test_starts_with_sparse_benchmarks(self):
        grid = maddison_year_grid()
        assert grid[:3] == [1.0, 1000.0, 1500.0]

    def test_strictly_increasing(self):
        grid = maddison_year_grid()
        assert np.all(np.diff(grid) > 0)

    def test_first_millennium_gap(self):
        assert not [y for y in maddison_year_grid() if 1 < y < 1000]

    def test_annual_tail(self):
        grid = maddison_year_grid()
        tail = [y for y in grid if y >= 1950]
        assert tail == [float(y) for y in range(1950, 2009)]
