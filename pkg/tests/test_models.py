import math

import numpy as np
import pytest
from scipy import integrate, optimize, special, stats

from extremogram.errors import (
    DivergentCoefficients,
    InvalidParameter,
    NonCausal,
    NonStationary,
    NoRoot,
    UnsupportedRegion,
)
from extremogram.models import (
    Family,
    ModelSpec,
    NoiseLaw,
    NoiseSpec,
    ar1_extremogram,
    ar_filter,
    arch1_extremogram,
    arma_extremogram,
    arma_psi_coefficients,
    band_example_oracle,
    causal_psi,
    check_causal,
    decay_slope,
    garch11_extremogram,
    garch_decay_rate,
    garch_log_moment,
    linear_process_extremogram,
    ou_psi,
    preasymptotic_tail_dependence,
    sample_noise,
    sas_ou_extremogram,
    simulate,
    simulate_filtered,
    solve_garch_tail_index,
    sv_extremogram,
    sv_tail_measure,
    unit_variance,
)


class TestNoise:
    def test_gaussian_mean(self):
        a = sample_noise(NoiseSpec("gaussian"), 1_000_000, seed=1)
        assert abs(a.mean()) < 4e-3
        np.testing.assert_array_equal(a, sample_noise(NoiseSpec("gaussian"), 1_000_000, seed=1))

    def test_pareto_balance(self):
        z = sample_noise(NoiseSpec("pareto", alpha=2, p=0.5), 1_000_000, seed=2)
        x = np.quantile(np.abs(z), 0.999)
        assert (z > x).sum() / (np.abs(z) > x).sum() == pytest.approx(0.5, abs=0.05)

    def test_pareto_tail(self):
        z = sample_noise(NoiseSpec("pareto", alpha=1.5, p=1.0), 200_000, seed=3)
        assert np.all(z >= 1)
        # P(Z > x) = x^-alpha exactly
        assert (z > 10).mean() == pytest.approx(10 ** -1.5, rel=0.05)

    def test_stable_two_is_gaussian(self):
        z = sample_noise(NoiseSpec("stable", alpha=2), 20_000, seed=4)
        assert stats.kstest(z, stats.norm(scale=math.sqrt(2)).cdf).pvalue > 1e-3

    def test_stable_one_is_cauchy(self):
        z = sample_noise(NoiseSpec("stable", alpha=1), 20_000, seed=5)
        assert stats.kstest(z, stats.cauchy.cdf).pvalue > 1e-3

    def test_stable_tail_index(self):
        z = np.abs(sample_noise(NoiseSpec("stable", alpha=1.2), 1_000_000, seed=6))
        hi, lo = np.quantile(z, [0.9999, 0.999])
        slope = math.log(1e-4 / 1e-3) / math.log(hi / lo)
        assert slope == pytest.approx(-1.2, abs=0.15)

    @pytest.mark.parametrize("kw", [
        {"law": "stable", "alpha": 2.5}, {"law": "stable", "alpha": 0.0},
        {"law": "pareto", "alpha": -1.0}, {"law": "pareto", "alpha": 1.0, "p": 1.5},
        {"law": "t", "nu": 0.0}, {"law": "stable"},
    ])
    def test_invalid(self, kw):
        law = kw.pop("law")
        with pytest.raises(InvalidParameter):
            NoiseSpec(law, **kw)

    def test_unit_variance(self):
        for spec in (NoiseSpec("t", nu=5), NoiseSpec("gaussian", scale=3.0)):
            z = sample_noise(unit_variance(spec), 400_000, seed=7)
            assert z.std() == pytest.approx(1.0, abs=0.02)
        with pytest.raises(InvalidParameter):
            unit_variance(NoiseSpec("t", nu=2))

    def test_tail_index_property(self):
        assert NoiseSpec("t", nu=3).tail_index == 3
        assert NoiseSpec("stable", alpha=1.5).tail_index == 1.5
        assert NoiseSpec("gaussian").tail_index == math.inf

    def test_aliases_and_round_trip(self):
        s = NoiseSpec("student_t", nu=4)
        assert s.law is NoiseLaw.STUDENT_T
        assert NoiseSpec.from_dict(s.to_dict()) == s

    def test_needs_count(self):
        with pytest.raises(InvalidParameter):
            sample_noise(NoiseSpec("gaussian"), 0, seed=1)


class TestSimulate:
    def test_arma_identity(self):
        noise = NoiseSpec("pareto", alpha=1.5)
        spec = ModelSpec(family="arma", noise=noise)
        n = 500
        total = n + spec.burn_in + causal_psi((), ()).size - 1
        want = sample_noise(noise, total, seed=8)[-n:]
        np.testing.assert_array_equal(simulate(spec, n, seed=8).values.ravel(), want)

    def test_garch_identity(self):
        spec = ModelSpec(family="garch11", alpha0=4.0)
        n = 300
        z = sample_noise(NoiseSpec("gaussian"), n + spec.burn_in, seed=9)[spec.burn_in:]
        np.testing.assert_allclose(simulate(spec, n, seed=9).values.ravel(), 2.0 * z)

    def test_ar1_acf(self):
        spec = ModelSpec(family="arma", phi=[0.6], noise=NoiseSpec("gaussian"))
        x = simulate(spec, 100_000, seed=10).values.ravel()
        c = x - x.mean()
        assert (c[:-1] @ c[1:]) / (c @ c) == pytest.approx(0.6, abs=0.01)

    @pytest.mark.parametrize("spec", [
        ModelSpec(family="sv", phi=[0.9], alpha=1.5),
        ModelSpec(family="garch11", alpha0=1e-5, alpha1=0.1, beta1=0.85),
        ModelSpec(family="arma", phi=[0.5], theta=[0.3], alpha=1.2),
        ModelSpec(family="sas_linear", lambda_ou=0.5, alpha=1.5),
        ModelSpec(family="sas_linear", psi=[1.0, -0.5, 0.25], alpha=1.0),
    ])
    def test_deterministic(self, spec):
        a = simulate(spec, 2000, seed=11).values
        b = simulate(spec, 2000, seed=11).values
        np.testing.assert_array_equal(a, b)
        assert a.shape == (2000, 1) and np.all(np.isfinite(a))
        assert not np.array_equal(a, simulate(spec, 2000, seed=12).values)

    def test_explicit_psi_filter(self):
        psi = [1.0, -0.5, 0.25]
        spec = ModelSpec(family="sas_linear", psi=psi, alpha=1.0, burn_in=0)
        x = simulate(spec, 100, seed=13).values.ravel()
        z = sample_noise(NoiseSpec("stable", alpha=1.0), 102, seed=13)
        want = z[2:] - 0.5 * z[1:-1] + 0.25 * z[:-2]
        np.testing.assert_allclose(x, want)

    def test_sv_volatility(self):
        spec = ModelSpec(family="sv", phi=[0.0], noise=NoiseSpec("gaussian"))
        x = simulate(spec, 400_000, seed=14).values.ravel()
        # sigma = exp(N(0,1)) so E X^2 = E sigma^2 = e^2
        assert np.mean(x * x) == pytest.approx(math.e ** 2, rel=0.1)

    def test_heavy_tail_slope(self):
        alpha = 1.5
        x = np.abs(simulate(ModelSpec(family="arma", phi=[0.6], alpha=alpha), 1_000_000,
                            seed=15).values.ravel())
        top = np.sort(x)[-10_000:][::-1]
        surv = np.arange(1, top.size + 1) / x.size
        slope = np.polyfit(np.log(top), np.log(surv), 1)[0]
        assert slope == pytest.approx(-alpha, abs=0.3)

    def test_errors(self):
        with pytest.raises(InvalidParameter):
            simulate(ModelSpec(family="arma"), 0, seed=1)
        with pytest.raises(InvalidParameter):
            simulate(ModelSpec(family="arma"), 10, seed=None)
        with pytest.raises(NonCausal):
            simulate(ModelSpec(family="arma", phi=[1.0]), 10, seed=1)
        with pytest.raises(NonStationary):
            simulate(ModelSpec(family="garch11", alpha0=1.0, alpha1=3.0, beta1=0.5), 10, seed=1)

    def test_filtered(self):
        spec = ModelSpec(family="garch11", alpha0=1e-5, alpha1=0.1, beta1=0.85)
        y = simulate_filtered(spec, [-0.6465], 1000, seed=16)
        assert y.n == 1000
        warm = causal_psi([-0.6465], ()).size - 1
        base = simulate(spec, 1000 + warm, seed=16).values.ravel()
        np.testing.assert_allclose(y.values.ravel(), ar_filter(base, [-0.6465], warm))


class TestModelSpec:
    def test_aliases(self):
        assert ModelSpec(family="sv_lognormal", phi=[0.5]).family is Family.SV
        assert ModelSpec(family="ou", lambda_ou=1.0).family is Family.SAS_LINEAR
        arch = ModelSpec(family="arch1", alpha1=0.5, beta1=0.3)
        assert arch.family is Family.GARCH11 and arch.beta1 == 0.0

    @pytest.mark.parametrize("kw", [
        {"family": "garch11", "alpha0": 0.0},
        {"family": "garch11", "noise": NoiseSpec("stable", alpha=1.5)},
        {"family": "sv", "phi": [1.0]},
        {"family": "sv", "phi": [0.1, 0.2]},
        {"family": "sas_linear"},
        {"family": "sas_linear", "psi": [1.0], "lambda_ou": 0.5},
        {"family": "arma", "burn_in": -1},
        {"family": "nonsense"},
    ])
    def test_invalid(self, kw):
        with pytest.raises(InvalidParameter):
            ModelSpec(**kw)

    def test_json_round_trip(self):
        spec = ModelSpec(family="arma", phi=[0.5, -0.2], theta=[0.1], alpha=1.3,
                         noise=NoiseSpec("pareto", alpha=1.3, p=0.7))
        assert ModelSpec.from_json(spec.to_json()) == spec
        with pytest.raises(InvalidParameter):
            ModelSpec.from_dict({"family": "arma", "bogus": 1})

    def test_driving_noise(self):
        assert ModelSpec(family="arma", alpha=1.2).driving_noise() == NoiseSpec("stable", alpha=1.2)
        assert ModelSpec(family="garch11").driving_noise().law is NoiseLaw.GAUSSIAN


class TestTailIndex:
    def test_second_moment_root(self):
        r = solve_garch_tail_index(1.0, 0.0)
        assert r.alpha == pytest.approx(2.0, abs=0.02)
        assert float(r) == r.alpha

    @pytest.mark.parametrize("alpha1", [0.3, 0.7, 1.5])
    def test_gaussian_arch_moment_formula(self, alpha1):
        # E (alpha1 Z^2)^k = (2 alpha1)^k Gamma(k + 1/2) / sqrt(pi)
        def g(a):
            k = a / 2
            return k * math.log(2 * alpha1) + special.gammaln(k + 0.5) - 0.5 * math.log(math.pi)
        exact = optimize.brentq(g, 0.05, 30)
        r = solve_garch_tail_index(alpha1, 0.0, mc_replicates=2_000_000, seed=1)
        assert r.alpha == pytest.approx(exact, rel=0.03)

    def test_garch_typical(self):
        r = solve_garch_tail_index(0.1, 0.85)
        assert 2 < r.alpha < 20
        # the root makes the moment function one on fresh draws
        from extremogram.models.tail_index import garch_c_draws
        c = garch_c_draws(0.1, 0.85, None, 2_000_000, np.random.default_rng(99))
        assert np.mean(c ** (r.alpha / 2)) == pytest.approx(1.0, abs=0.02)

    def test_student_t(self):
        r = solve_garch_tail_index(1.0, 0.0, NoiseSpec("t", nu=5))
        assert r.alpha == pytest.approx(2.0, abs=0.03)

    @pytest.mark.parametrize("beta1", [1.0, 1.2])
    def test_no_root(self, beta1):
        with pytest.raises(NoRoot):
            solve_garch_tail_index(0.1, beta1)

    def test_deterministic(self):
        assert solve_garch_tail_index(0.5, 0.3, seed=5).alpha == \
            solve_garch_tail_index(0.5, 0.3, seed=5).alpha

    def test_log_moment_sign(self):
        assert garch_log_moment(0.1, 0.85) < 0
        assert garch_log_moment(0.1, 1.0) > 0


class TestSvOracle:
    def test_bounded_sets(self):
        r = sv_extremogram("(1,inf)", "(1,inf)", alpha=2, p=0.5, H=5)
        assert r.rho[0] == 1.0 and np.all(r.rho[1:] == 0)

    def test_tail_measure(self):
        assert sv_tail_measure("(1,inf)", alpha=2, p=0.5) == pytest.approx(0.5)
        assert sv_tail_measure("(-inf,-2)|(1,inf)", alpha=1, p=0.25) == pytest.approx(0.25 + 0.375)

    def test_neighbourhood_of_zero(self):
        r = sv_extremogram("(1,inf)", "(-1,1)", alpha=2, p=0.5, H=3)
        assert r.rho[0] == 0.0 and np.all(r.rho[1:] == 1)

    def test_lag0_partial(self):
        r = sv_extremogram("(1,inf)", "(2,inf)", alpha=1, p=0.5, H=1)
        assert r.rho[0] == pytest.approx(0.5)
        assert r.gamma[0] == pytest.approx(0.25)

    def test_unsupported(self):
        with pytest.raises(UnsupportedRegion):
            sv_extremogram("(-1,1)", "(1,inf)", alpha=2, p=0.5, H=1)
        with pytest.raises(UnsupportedRegion):
            sv_extremogram("(1,inf)", "(0,2)", alpha=2, p=0.5, H=1)


class TestLinearOracles:
    def test_ar1_value(self):
        r = ar1_extremogram(0.6, 1.5, 3)
        assert r.rho[1] == pytest.approx(0.46476, abs=1e-5)
        np.testing.assert_allclose(r.rho, 0.6 ** (1.5 * np.arange(4)))

    def test_ar1_negative(self):
        r = ar1_extremogram(-0.6, 1.5, 6)
        assert np.all(r.rho[1::2] == 0)
        np.testing.assert_allclose(r.rho[::2], 0.6 ** (1.5 * 2 * np.arange(4)))

    @pytest.mark.parametrize("phi", [0.6, -0.6])
    def test_ar1_matches_linear(self, phi):
        psi = phi ** np.arange(400)
        a = linear_process_extremogram(psi, 1.5, 1.0, 1.0, 8)
        np.testing.assert_allclose(a.rho, ar1_extremogram(phi, 1.5, 8).rho, atol=1e-12)

    def test_ar1_clipped(self):
        r = ar1_extremogram(0.6, 1.5, 2, a=4.0, b=1.0)
        assert r.rho[1] == 1.0

    def test_iid(self):
        r = linear_process_extremogram([1.0, 0.0, 0.0], 1.5, 1.0, 1.0, 4)
        assert r.rho[0] == 1.0 and np.all(r.rho[1:] == 0)

    def test_divergent(self):
        with pytest.raises(DivergentCoefficients):
            linear_process_extremogram([0.0, 0.0], 1.5, 1.0, 1.0, 1)
        with pytest.raises(DivergentCoefficients):
            linear_process_extremogram([np.inf, 1.0], 2.0, 1.0, 1.0, 1)

    def test_extreme_magnitudes(self):
        ref = linear_process_extremogram([1.0, 0.5], 2.0, 1.0, 1.0, 2).rho
        for c in (1e-280, 1e200):
            r = linear_process_extremogram([c, 0.5 * c], 2.0, 1.0, 1.0, 2)
            np.testing.assert_allclose(r.rho, ref, rtol=1e-12)

    def test_ma1(self):
        # psi = (1, theta): rho(1) = min(1, theta)^alpha / (1 + theta^alpha)
        r = linear_process_extremogram([1.0, 0.5], 1.0, 1.0, 1.0, 2)
        assert r.rho[1] == pytest.approx(0.5 / 1.5)
        assert r.rho[2] == 0.0

    def test_arma_in_unit_interval(self):
        r = arma_extremogram([0.5, 0.2], [0.4, -0.3], 1.2, 20)
        assert np.all((r.rho >= 0) & (r.rho <= 1))
        assert r.rho[0] == 1.0

    def test_ou(self):
        r = sas_ou_extremogram(0.5, 1.0, 1.0, 1.0, 3)
        assert r.rho[0] == 1.0
        assert r.rho[2] == pytest.approx(math.exp(-1), abs=1e-12)
        assert sas_ou_extremogram(0.5, 1.0, 100.0, 1.0, 2).rho[2] == 1.0
        with pytest.raises(InvalidParameter):
            sas_ou_extremogram(0.5, 2.0, 1.0, 1.0, 2)

    def test_ou_matches_linear(self):
        a = linear_process_extremogram(ou_psi(0.5), 1.5, 1.0, 2.0, 5)
        np.testing.assert_allclose(a.rho, sas_ou_extremogram(0.5, 1.5, 1.0, 2.0, 5).rho,
                                   atol=1e-12)

    def test_monotone_in_b(self):
        small = ar1_extremogram(0.6, 1.5, 5, a=1.0, b=1.0)
        large = ar1_extremogram(0.6, 1.5, 5, a=1.0, b=2.0)
        assert np.all(large.rho <= small.rho)


class TestGarchOracles:
    def test_arch_quadrature(self):
        r = arch1_extremogram(1.0, None, 1.0, 1.0, 1, mc_replicates=400_000, seed=1, alpha=2.0)
        inner = integrate.quad(lambda z: z * z * stats.norm.pdf(z), -1.0, 1.0)[0]
        exact = inner + 2 * stats.norm.sf(1.0)
        assert r.rho[0] == 1.0
        assert abs(r.rho[1] - exact) < 4 * r.se[1]

    def test_reduction(self):
        arch = arch1_extremogram(0.5, None, 1.0, 1.0, 6, mc_replicates=200_000, seed=2)
        garch = garch11_extremogram(1.0, 0.5, 0.0, None, 1.0, 1.0, 6,
                                    mc_replicates=200_000, seed=3)
        joint = np.sqrt(arch.se ** 2 + garch.se ** 2)
        assert np.all(np.abs(arch.rho - garch.rho)[1:] <= 3 * joint[1:])
        assert garch.rho[0] == pytest.approx(1.0)

    def test_se_halves(self):
        a = arch1_extremogram(0.5, None, 1.0, 1.0, 3, mc_replicates=50_000, seed=4, alpha=3.0)
        b = arch1_extremogram(0.5, None, 1.0, 1.0, 3, mc_replicates=200_000, seed=5, alpha=3.0)
        np.testing.assert_allclose(a.se[1:] / b.se[1:], 2.0, rtol=0.3)

    def test_values_and_b(self):
        lo = garch11_extremogram(1.0, 0.1, 0.85, None, 1.0, 1.0, 8, mc_replicates=100_000, seed=6)
        hi = garch11_extremogram(1.0, 0.1, 0.85, None, 1.0, 3.0, 8, mc_replicates=100_000, seed=6)
        assert np.all((lo.rho >= 0) & (lo.rho <= 1 + 1e-12))
        assert np.all(hi.rho[1:] <= lo.rho[1:])
        assert lo.se is not None and lo.replicates == 100_000

    def test_decay(self):
        alpha = solve_garch_tail_index(0.1, 0.85).alpha
        assert garch_decay_rate(0.1, 0.85, alpha / 4) < 0
        r = garch11_extremogram(1.0, 0.1, 0.85, None, 1.0, 1.0, 40, mc_replicates=100_000, seed=7,
                                alpha=alpha)
        assert decay_slope(r, np.arange(10, 41)) < 0

    def test_needs_seed(self):
        with pytest.raises(InvalidParameter):
            arch1_extremogram(0.5, None, 1.0, 1.0, 2, seed=None, alpha=2.0)

    def test_serialization(self):
        r = arch1_extremogram(0.5, None, 1.0, 1.0, 2, mc_replicates=1000, seed=8, alpha=2.0)
        d = r.to_dict()
        assert d["counts"] is None and len(d["se"]) == 3
        assert r.to_csv().splitlines()[0] == "lag,rho,lo,hi,baseline"


class TestArmaPsi:
    def test_ma(self):
        np.testing.assert_allclose(arma_psi_coefficients([], [0.4, -0.2], 4), [1, 0.4, -0.2, 0, 0])

    def test_ar1(self):
        np.testing.assert_allclose(arma_psi_coefficients([0.7], [], 5), 0.7 ** np.arange(6))

    def test_arma11(self):
        np.testing.assert_allclose(arma_psi_coefficients([0.5], [0.4], 3), [1, 0.9, 0.45, 0.225])

    def test_recursion(self):
        phi, theta = [0.5, -0.3, 0.1], [0.2, 0.7]
        psi = arma_psi_coefficients(phi, theta, 30)
        th = np.r_[1.0, theta, np.zeros(40)]
        want = np.zeros(31)
        for j in range(31):
            want[j] = th[j] + sum(phi[i - 1] * want[j - i] for i in range(1, 4) if j - i >= 0)
        np.testing.assert_allclose(psi, want, atol=1e-14)

    @pytest.mark.parametrize("phi", [[1.0], [1.2], [0.5, 0.5], [0.0, 1.0 + 1e-8]])
    def test_noncausal(self, phi):
        with pytest.raises(NonCausal):
            check_causal(phi)
        with pytest.raises(NonCausal):
            arma_psi_coefficients(phi, [], 5)

    def test_truncation_length(self):
        assert causal_psi([0.5], []).size == 1001
        psi = causal_psi([0.999], [])
        assert psi.size > 1001
        assert abs(psi[-1]) < 1e-12


class TestBandOracle:
    def test_values(self):
        r = band_example_oracle(0.5, 2.0, 1.0)
        assert r.mu_a == 1.0
        assert r.mu_b == pytest.approx(1.5)
        assert r.gamma_ab0 == pytest.approx(0.5)
        assert r.gamma_bb0 == pytest.approx(1.5)

    def test_limit(self):
        assert band_example_oracle(0.5, 1e12, 1.0).gamma_ab0 == pytest.approx(1.0)

    def test_invalid(self):
        with pytest.raises(InvalidParameter):
            band_example_oracle(1.5, 2.0, 1.0)


def test_preasymptotic_brute():
    x = np.random.default_rng(9).standard_normal(2000)
    u = np.array([0.5, 1.5, 2.5])
    got = preasymptotic_tail_dependence(x, u, 2)
    for ui, g in zip(u, got):
        want = np.mean((x[:-2] > ui) & (x[2:] > ui)) / np.mean(x > ui)
        assert g == pytest.approx(want)
