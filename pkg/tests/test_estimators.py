import json
import warnings

import numpy as np
import pytest

from extremogram.core import (
    BandMethod,
    EstimatorConfig,
    Threshold,
    TimeSeries,
    lagged_embed,
    parse_region,
    select_threshold,
)
from extremogram.errors import (
    InvalidParameter,
    LagTooLarge,
    NoExceedances,
    NotBoundedAwayFromZero,
    TooFewBlocks,
    TuningWarning,
    ZeroDenominator,
)
from extremogram.estimators import (
    ExtremogramResult,
    autocovariances,
    block_variance,
    block_variance_from_indicators,
    clt_variances,
    cross_extremogram_matrix,
    empirical_extremogram,
    exceedance_measure,
    lagged_counts,
    long_run_variance,
    ratio_estimator,
    ratio_variance,
    tail_dependence,
)
from extremogram.models import ModelSpec, NoiseSpec, sample_noise, simulate

UPPER = "(1,inf)"
TWO_SIDED = "(-inf,-1)|(1,inf)"


def brute_extremogram(x, a_m, lo, max_lag):
    """Direct double loop over the displayed ratio for A = B = (lo, inf)."""
    x = np.asarray(x, dtype=float) / a_m
    n = x.size
    den = sum(1 for t in range(n) if x[t] > lo)
    out = []
    for h in range(max_lag + 1):
        num = sum(1 for t in range(n - h) if x[t] > lo and x[t + h] > lo)
        out.append(num / den)
    return np.array(out)


class TestExceedanceMeasure:
    def test_order_statistic_identity(self):
        z = sample_noise(NoiseSpec("pareto", alpha=2), 100_000, seed=1)
        th = select_threshold(z, 0.98)
        est = exceedance_measure(z, TWO_SIDED, th)
        assert est.count == 100_000 - 98_000
        assert est.value == pytest.approx(1.0)
        assert est.value == th.m / est.n * est.count

    def test_zeros(self):
        th = Threshold(0.98, 1.0, 50.0)
        est = exceedance_measure(np.zeros(100), UPPER, th)
        assert est.value == 0.0 and est.count == 0

    def test_symmetric_halves(self):
        z = sample_noise(NoiseSpec("stable", alpha=1.5), 400_000, seed=2)
        th = select_threshold(z, 0.98)
        up = exceedance_measure(z, "(1,inf)", th).value
        down = exceedance_measure(z, "(-inf,-1)", th).value
        assert up == pytest.approx(0.5, abs=0.03)
        assert down == pytest.approx(0.5, abs=0.03)

    def test_requires_bounded(self):
        th = Threshold(0.9, 1.0, 10.0)
        with pytest.raises(NotBoundedAwayFromZero):
            exceedance_measure(np.ones(10), "(-1,1)", th)
        assert exceedance_measure(np.ones(10), "(-2,2)", th, allow_unbounded=True).count == 10


class TestEmpiricalExtremogram:
    def test_hand_example(self):
        th = Threshold(0.5, 5.0, 2.0)
        r = empirical_extremogram([10, 0, 12, 0, 11, 0], UPPER, UPPER, EstimatorConfig(max_lag=2), th)
        assert r.rho[2] == pytest.approx(2 / 3)
        assert r.rho[1] == 0.0
        assert r.rho[0] == 1.0
        assert r.denominator_count == 3
        assert r.numerator_counts.tolist() == [3, 0, 2]

    def test_brute_force(self):
        x = np.abs(sample_noise(NoiseSpec("t", nu=3), 3000, seed=3))
        th = select_threshold(x, 0.95)
        r = empirical_extremogram(x, UPPER, UPPER, EstimatorConfig(max_lag=7), th)
        np.testing.assert_allclose(r.rho, brute_extremogram(x, th.a_m, 1.0, 7))

    def test_single_exceedance(self):
        x = np.zeros(50)
        x[10] = 5.0
        th = Threshold(0.98, 1.0, 50.0)
        r = empirical_extremogram(x, UPPER, UPPER, EstimatorConfig(max_lag=5), th)
        assert r.rho[0] == 1.0 and np.all(r.rho[1:] == 0)

    def test_no_exceedances(self):
        th = Threshold(0.98, 10.0, 50.0)
        with pytest.raises(NoExceedances):
            empirical_extremogram(np.ones(20), UPPER, UPPER, EstimatorConfig(max_lag=2), th)

    def test_lag_too_large(self):
        with pytest.raises(LagTooLarge):
            empirical_extremogram(np.arange(10.0), UPPER, UPPER, EstimatorConfig(max_lag=10))

    def test_baseline(self):
        z = sample_noise(NoiseSpec("pareto", alpha=2), 10_000, seed=4)
        th = select_threshold(z, 0.98)
        r = empirical_extremogram(z, UPPER, "(-inf,-1)", EstimatorConfig(max_lag=3), th)
        count_b = int((z / th.a_m < -1).sum())
        assert r.baseline == count_b / z.size

    def test_ratio_identity(self):
        z = sample_noise(NoiseSpec("pareto", alpha=1), 5000, seed=5)
        r = empirical_extremogram(z, TWO_SIDED, UPPER, EstimatorConfig(max_lag=10, quantile_level=0.9))
        np.testing.assert_array_equal(np.rint(r.rho * r.denominator_count), r.numerator_counts)

    def test_subset_gives_one_at_zero(self):
        z = sample_noise(NoiseSpec("pareto", alpha=1), 5000, seed=6)
        r = empirical_extremogram(z, UPPER, TWO_SIDED, EstimatorConfig(max_lag=1, quantile_level=0.9))
        assert r.rho[0] == 1.0

    def test_reference_stored(self):
        z = sample_noise(NoiseSpec("pareto", alpha=1), 5000, seed=7)
        ref = np.linspace(1, 0, 4)
        r = empirical_extremogram(z, UPPER, UPPER, EstimatorConfig(max_lag=3), reference=ref)
        np.testing.assert_array_equal(r.reference, ref)
        with pytest.raises(InvalidParameter):
            empirical_extremogram(z, UPPER, UPPER, EstimatorConfig(max_lag=3), reference=[1.0])


class TestCross:
    def test_asymmetric(self):
        th = Threshold(0.5, 1.0, 2.0)
        res = cross_extremogram_matrix([2, -2, 0, 0], "(1,inf)", "(-inf,-1)",
                                       EstimatorConfig(max_lag=1), th)
        assert res["AB"].rho[1] == 1.0
        assert res["BA"].rho[1] == 0.0
        assert set(res) == {"AA", "AB", "BA", "BB"}

    def test_same_sets(self):
        z = sample_noise(NoiseSpec("pareto", alpha=2), 5000, seed=8)
        res = cross_extremogram_matrix(z, TWO_SIDED, TWO_SIDED, EstimatorConfig(max_lag=5))
        for key in ("AB", "BA", "BB"):
            np.testing.assert_array_equal(res[key].rho, res["AA"].rho)

    def test_iid_symmetry(self):
        z = sample_noise(NoiseSpec("pareto", alpha=2), 400_000, seed=9)
        res = cross_extremogram_matrix(z, "(1,inf)", "(-inf,-1)", EstimatorConfig(max_lag=5))
        np.testing.assert_allclose(res["AB"].rho[1:], res["BA"].rho[1:], atol=0.01)


class TestTailDependence:
    def test_equals_extremogram(self):
        z = simulate(ModelSpec(family="arma", phi=[0.5], alpha=1.5), 20_000, seed=10)
        cfg = EstimatorConfig(max_lag=6)
        a = tail_dependence(z, cfg)
        b = empirical_extremogram(z, UPPER, UPPER, cfg)
        np.testing.assert_array_equal(a.rho, b.rho)
        assert a.rho[0] == 1.0

    def test_iid_baseline(self):
        z = np.abs(sample_noise(NoiseSpec("pareto", alpha=1.5), 400_000, seed=11))
        r = tail_dependence(z, EstimatorConfig(max_lag=5))
        np.testing.assert_allclose(r.rho[1:], r.baseline, atol=0.006)

    def test_scalar_only(self):
        with pytest.raises(InvalidParameter):
            tail_dependence(np.ones((10, 2)))


class TestRatio:
    def test_same_set(self):
        z = sample_noise(NoiseSpec("pareto", alpha=2), 5000, seed=12)
        th = select_threshold(z, 0.95)
        assert ratio_estimator(z, TWO_SIDED, TWO_SIDED, th) == 1.0

    def test_subset(self):
        z = sample_noise(NoiseSpec("pareto", alpha=2), 5000, seed=13)
        th = select_threshold(z, 0.95)
        v = ratio_estimator(z, TWO_SIDED, "(2,inf)", th)
        assert 0 <= v <= 1

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            ratio_estimator(np.zeros(10), UPPER, UPPER, Threshold(0.9, 1.0, 10.0))

    def test_band_example_ratio(self):
        # the limit mu(B) / mu(A) = 1.5 is reached slowly: x_2 / a_m shifts the band edges
        spec = ModelSpec(family="sv", phi=[0.9], noise=NoiseSpec("pareto", alpha=1, p=1.0))
        s = simulate(spec, 2_000_000, seed=14)
        emb = lagged_embed(s, 1)
        band = "band(0.5 < x1 - x2 < 2) & [0,inf)@1 & [0,inf)@2"
        vals = [ratio_estimator(emb, "(1,inf)@1", band, select_threshold(s, q))
                for q in (0.98, 0.995, 0.999)]
        assert vals[0] < vals[1] < vals[2]
        assert vals[2] == pytest.approx(1.5, abs=0.1)


class TestBlockVariance:
    def test_zero(self):
        assert block_variance_from_indicators(np.zeros(100), 10).sigma2 == 0.0

    def test_hand(self):
        v = block_variance_from_indicators([1, 1, 1, 1, 0, 0, 0, 0], 4)
        assert v.sigma2 == 4.0 and v.k == 2 and v.block_length == 4

    def test_remainder_dropped(self):
        v = block_variance_from_indicators([1, 0, 0, 1, 1], 2)
        # blocks (1,0) and (0,1); the trailing 1 is dropped
        assert v.sigma2 == 0.0 and v.k * v.block_length <= 5

    def test_too_few_blocks(self):
        with pytest.raises(TooFewBlocks):
            block_variance_from_indicators(np.ones(7), 4)
        with pytest.raises(InvalidParameter):
            block_variance_from_indicators(np.ones(7), 0)

    def test_bernoulli(self):
        rng = np.random.default_rng(15)
        ind = rng.random(1_000_000) < 0.02
        v = block_variance_from_indicators(ind, 50)
        assert v.sigma2 == pytest.approx(50 * 0.02 * 0.98, rel=0.2)

    def test_iid_matches_measure(self):
        z = sample_noise(NoiseSpec("pareto", alpha=2), 500_000, seed=16)
        th = select_threshold(z, 0.98)
        v = block_variance(z, TWO_SIDED, threshold=th, block_length=50)
        assert v.sigma2 == pytest.approx(exceedance_measure(z, TWO_SIDED, th).value, rel=0.15)


class TestLongRunVariance:
    def test_autocovariances_direct(self):
        w = np.random.default_rng(17).normal(size=500)
        ac = autocovariances(w, 5)
        c = w - w.mean()
        direct = [c[: 500 - k] @ c[k:] / 500 for k in range(6)]
        np.testing.assert_allclose(ac, direct, atol=1e-12)

    def test_uncentered(self):
        w = np.ones(10)
        np.testing.assert_allclose(autocovariances(w, 2, center=False), [1.0, 0.9, 0.8])

    def test_lrv_white(self):
        w = np.random.default_rng(18).normal(size=200_000)
        assert long_run_variance(w, 10) == pytest.approx(1.0, abs=0.05)

    def test_lrv_ma1(self):
        e = np.random.default_rng(19).normal(size=400_001)
        w = e[1:] + e[:-1]
        assert long_run_variance(w, 5) == pytest.approx(4.0, rel=0.05)


class TestCltBands:
    def test_ratio_variance_projection(self):
        assert ratio_variance(1.0, 0.3, 0.7, 0.0, 0.0) == pytest.approx(0.7)
        with pytest.raises(ZeroDenominator):
            ratio_variance(0.0, 0.1, 0.1, 0.1, 0.1)

    def test_ratio_variance_iid_bernoulli(self):
        # independent-in-time hits with P(D | C) = g: variance g (1 - g) / mu(C)
        assert ratio_variance(1.0, 0.5, 0.5, 1.0, 0.5) == pytest.approx(0.25)

    def test_band_shape(self):
        s = simulate(ModelSpec(family="arma", phi=[0.6], alpha=1.5), 50_000, seed=20)
        cfg = EstimatorConfig(max_lag=5, band_method=BandMethod.CLT)
        # default block length ceil(n^0.4) = 76 exceeds ceil(m) = 50
        with pytest.warns(TuningWarning):
            r = empirical_extremogram(s, UPPER, UPPER, cfg)
        half = r.band_hi - r.rho
        np.testing.assert_allclose(r.rho - r.band_lo, half)
        th = select_threshold(s, 0.98)
        np.testing.assert_allclose(half, 1.959963984540054 * np.sqrt(th.m / s.n * r.variance))
        assert r.variance[0] == 0.0
        assert np.all(r.variance[1:] > 0)
        assert r.config["block_length"] == 76

    def test_iid_variance(self):
        """Independent hits: var_h reduces to g (1 - g) / mu(A) with g the marginal hit rate."""
        z = sample_noise(NoiseSpec("pareto", alpha=2), 400_000, seed=21)
        th = select_threshold(z, 0.98)
        ind = z / th.a_m > 1
        var = clt_variances(ind, ind, th.m, 3, 20)
        g = ind.mean()
        np.testing.assert_allclose(var[1:], g * (1 - g) / (th.m * g), rtol=0.25)

    def test_band_example_lag0(self):
        spec = ModelSpec(family="sv", phi=[0.9], noise=NoiseSpec("pareto", alpha=1, p=1.0))
        s = simulate(spec, 200_000, seed=22)
        th = select_threshold(s, 0.98)
        emb = lagged_embed(s, 1)
        band = "band(0.5 < x1 - x2 < 2) & [0,inf)@1 & [0,inf)@2"
        cfg = EstimatorConfig(max_lag=0, band_method=BandMethod.CLT, block_length=1)
        r = empirical_extremogram(emb, "(1,inf)@1", band, cfg, th)
        assert r.rho[0] == pytest.approx(0.5, abs=0.1)
        # ratio delta method: rho (1 - rho) rather than the numerator's 1 - U^-alpha
        assert r.variance[0] == pytest.approx(0.25, abs=0.06)

    def test_zero_variance_warns(self):
        x = np.zeros(400)
        x[::40] = 10.0
        th = Threshold(0.98, 1.0, 50.0)
        cfg = EstimatorConfig(max_lag=2, band_method=BandMethod.CLT, block_length=5)
        with pytest.warns(RuntimeWarning):
            r = empirical_extremogram(x, UPPER, UPPER, cfg, th)
        assert np.all(r.band_hi == r.band_lo)


class TestPermutationBands:
    def test_deterministic(self):
        z = sample_noise(NoiseSpec("pareto", alpha=2), 5000, seed=23)
        cfg = EstimatorConfig(max_lag=5, band_method=BandMethod.PERMUTATION, seed=99,
                              num_permutations=30, quantile_level=0.95)
        a = empirical_extremogram(z, UPPER, UPPER, cfg)
        b = empirical_extremogram(z, UPPER, UPPER, cfg)
        np.testing.assert_array_equal(a.band_lo, b.band_lo)
        np.testing.assert_array_equal(a.band_hi, b.band_hi)
        assert a.band_lo[0] == a.band_hi[0] == a.rho[0]

    def test_iid_calibration(self):
        z = sample_noise(NoiseSpec("pareto", alpha=2), 10_000, seed=24)
        cfg = EstimatorConfig(max_lag=40, band_method=BandMethod.PERMUTATION, seed=1,
                              num_permutations=99, quantile_level=0.9)
        r = empirical_extremogram(z, TWO_SIDED, TWO_SIDED, cfg)
        escaped = (r.rho[1:] < r.band_lo[1:]) | (r.rho[1:] > r.band_hi[1:])
        assert escaped.mean() <= 0.15

    def test_garch_exceeds(self):
        spec = ModelSpec(family="garch11", alpha0=1e-5, alpha1=0.3, beta1=0.65)
        s = simulate(spec, 20_000, seed=25)
        cfg = EstimatorConfig(max_lag=3, band_method=BandMethod.PERMUTATION, seed=2,
                              num_permutations=99, quantile_level=0.95)
        r = empirical_extremogram(s, TWO_SIDED, TWO_SIDED, cfg)
        assert r.rho[1] > r.band_hi[1]

    @pytest.mark.parametrize("perms", [0, 19])
    def test_too_few(self, perms):
        cfg = EstimatorConfig(max_lag=2, band_method=BandMethod.PERMUTATION, seed=1,
                              num_permutations=perms)
        with pytest.raises(InvalidParameter):
            empirical_extremogram(np.arange(100.0), UPPER, UPPER, cfg)

    def test_needs_seed(self):
        cfg = EstimatorConfig(max_lag=2, band_method=BandMethod.PERMUTATION)
        with pytest.raises(InvalidParameter):
            empirical_extremogram(np.arange(100.0), UPPER, UPPER, cfg)


class TestSerialization:
    def _result(self, bands=BandMethod.CLT):
        s = simulate(ModelSpec(family="arma", phi=[0.6], alpha=1.5), 20_000, seed=26)
        cfg = EstimatorConfig(max_lag=4, band_method=bands, seed=3, num_permutations=20)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return empirical_extremogram(s, UPPER, UPPER, cfg)

    def test_json_fields(self):
        d = json.loads(self._result().to_json())
        for key in ("lags", "rho", "band_lo", "band_hi", "baseline", "counts", "config"):
            assert key in d
        assert d["counts"]["n"] == 20_000
        assert d["config"]["a_set"].startswith("(1.0,inf)")

    def test_json_round_trip(self):
        for bands in BandMethod:
            text = self._result(bands).to_json()
            assert ExtremogramResult.from_json(text).to_json() == text

    def test_csv(self):
        r = self._result(BandMethod.NONE)
        lines = r.to_csv().splitlines()
        assert lines[0] == "lag,rho,lo,hi,baseline"
        assert len(lines) == 6
        assert lines[1].split(",")[2:4] == ["", ""]


def test_lagged_counts_direct():
    rng = np.random.default_rng(27)
    a = rng.random(300) < 0.2
    b = rng.random(300) < 0.3
    got = lagged_counts(a, b, 12)
    want = [int(np.sum(a[: 300 - h] & b[h:])) for h in range(13)]
    assert got.tolist() == want
