import numpy as np
import pytest

from leadlag import (
    DataError,
    PaddedReturnSeries,
    ReturnSeries,
    SeriesTooShortError,
    TimeSeries,
    ZeroNormError,
    ZeroVarianceError,
    normalize,
    pearson,
    returns,
    uncentered_corr,
)

# frozen from a direct evaluation of the centered formula
PEARSON_1235 = 0.9827076298239908


class TestTimeSeries:
    def test_too_short(self):
        with pytest.raises(SeriesTooShortError):
            TimeSeries([1.0])

    def test_non_finite(self):
        with pytest.raises(DataError):
            TimeSeries([1.0, np.nan, 2.0])
        with pytest.raises(DataError):
            TimeSeries([1.0, np.inf])

    def test_padded_invariants(self):
        r = ReturnSeries([1.0, 2.0, 3.0])
        p = PaddedReturnSeries.for_window(r, 5)
        assert p.pad == 2
        assert len(p) == len(r) + 2 * p.pad
        assert np.all(p.padded[:2] == 0.0) and np.all(p.padded[-2:] == 0.0)
        assert np.array_equal(p.padded[2:-2], r.values)


class TestNormalize:
    def test_basic(self):
        out = normalize(TimeSeries([1.0, 2.0, 3.0]))
        np.testing.assert_allclose(out.values, [-1.0, 0.0, 1.0], atol=1e-12)

    def test_constant_raises(self):
        with pytest.raises(ZeroVarianceError):
            normalize(TimeSeries([5.0, 5.0, 5.0]))
        with pytest.raises(ZeroVarianceError):
            normalize(TimeSeries([0.1, 0.1, 0.1]))

    def test_idempotent(self, rng):
        for _ in range(20):
            x = TimeSeries(rng.normal(3.0, 2.5, 50))
            once = normalize(x)
            twice = normalize(once)
            np.testing.assert_allclose(twice.values, once.values, atol=1e-12)

    def test_moments(self, rng):
        out = normalize(TimeSeries(rng.normal(10, 4, 200)))
        assert abs(out.values.mean()) < 1e-12
        assert abs(out.values.std(ddof=1) - 1.0) < 1e-12


class TestReturns:
    def test_basic(self):
        np.testing.assert_array_equal(returns(TimeSeries([0.0, 1.0, 3.0])).values, [1.0, 2.0])

    def test_constant(self):
        np.testing.assert_array_equal(returns(TimeSeries([2.0, 2.0, 2.0])).values, [0.0, 0.0])

    def test_telescoping(self, rng):
        for _ in range(10):
            x = TimeSeries(rng.normal(0, 1, 30))
            r = returns(x)
            assert np.isclose(r.values.sum(), x.values[-1] - x.values[0], atol=1e-12)

    def test_shift_invariance(self, rng):
        x = rng.normal(0, 1, 40)
        r0 = returns(TimeSeries(x)).values
        r1 = returns(TimeSeries(x + 7.25)).values
        np.testing.assert_allclose(r0, r1, atol=1e-12)


class TestPearson:
    def test_self(self, rng):
        u = rng.normal(0, 1, 25)
        assert pearson(u, u) == 1.0

    def test_negation(self, rng):
        u = rng.normal(0, 1, 25)
        assert pearson(u, -u) == pytest.approx(-1.0, abs=1e-12)

    def test_derived_value(self):
        assert pearson([1, 2, 3, 4], [1, 2, 3, 5]) == pytest.approx(PEARSON_1235, abs=1e-12)

    def test_constant_raises(self):
        with pytest.raises(ZeroVarianceError):
            pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])

    def test_matches_uncentered_for_zero_mean(self, rng):
        for _ in range(10):
            u = rng.normal(0, 1, 60)
            v = rng.normal(0, 1, 60)
            u -= u.mean()
            v -= v.mean()
            assert pearson(u, v) == pytest.approx(uncentered_corr(u, v), abs=1e-12)


class TestUncenteredCorr:
    def test_self(self, rng):
        u = rng.normal(0, 1, 10)
        assert uncentered_corr(u, u) == 1.0

    def test_orthogonal(self):
        assert uncentered_corr([1.0, 0.0], [0.0, 1.0]) == 0.0
        assert uncentered_corr([1.0, 1.0], [1.0, -1.0]) == 0.0

    def test_zero_norm_raises(self):
        with pytest.raises(ZeroNormError):
            uncentered_corr([0.0, 0.0], [1.0, 2.0])

    def test_symmetry_and_bound(self, rng):
        for _ in range(50):
            u = rng.normal(0, 1, 20)
            v = rng.normal(0, 1, 20)
            r = uncentered_corr(u, v)
            assert r == uncentered_corr(v, u)
            assert abs(r) <= 1.0
