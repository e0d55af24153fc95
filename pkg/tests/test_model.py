import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from llrcal.errors import DegenerateModelError, DomainError
from llrcal.model import (CalibratedGaussianLlrModel, GaussianPair, dprime, eer_of_model,
                          expectation_constraints, from_eer, llr_of_llr, nontarget_pdf,
                          posterior_target, target_pdf, theoretical_cllr, validate_gaussian_pair)
from llrcal.normal import std_normal_quantile

# Cllr (bits) of the exact model, mpmath quad at 40 digits over (-inf, 0, mu, inf)
MPMATH_CLLR = {
    0.5: 0.8392527802035831,
    1: 0.7095198866391519,
    2: 0.5140558458670647,
    4: 0.2785484092096119,
    8: 0.08717771422551784,
    50: 1.2452852511757104e-06,
}
PHI_MINUS_ONE = 0.15865525393145705

MU_GRID = [0.1, 0.5, 1, 2, 4, 8]


class TestModel:
    def test_derived_quantities(self):
        m = CalibratedGaussianLlrModel(2.0)
        assert (m.sigma, m.target_mean, m.nontarget_mean) == (2.0, 2.0, -2.0)

    @pytest.mark.parametrize("mu", [-1.0, math.inf, math.nan])
    def test_invalid_mu(self, mu):
        with pytest.raises(DomainError):
            CalibratedGaussianLlrModel(mu)


class TestEer:
    def test_from_eer_half_is_degenerate(self):
        m = from_eer(0.5)
        assert m.mu == 0 and m.sigma == 0

    def test_from_eer_phi_minus_one(self):
        m = from_eer(PHI_MINUS_ONE)
        assert m.mu == pytest.approx(2.0, abs=1e-12)
        assert m.sigma == pytest.approx(2.0, abs=1e-12)

    @pytest.mark.parametrize("eer", [0.0, -0.1, 0.51, 1.0])
    def test_from_eer_domain(self, eer):
        with pytest.raises(DomainError):
            from_eer(eer)

    def test_eer_of_model(self):
        assert eer_of_model(CalibratedGaussianLlrModel(2.0)) == pytest.approx(PHI_MINUS_ONE, abs=1e-15)
        assert eer_of_model(CalibratedGaussianLlrModel(0.0)) == 0.5

    def test_round_trip_grid(self):
        for p in np.linspace(0.001, 0.5, 200)[1:]:
            assert abs(eer_of_model(from_eer(p)) - p) <= 1e-10

    @given(st.floats(min_value=1e-6, max_value=0.5))
    def test_round_trip_property(self, p):
        assert abs(eer_of_model(from_eer(p)) - p) <= 1e-10


class TestDprime:
    @pytest.mark.parametrize("mu,expected", [(2, 2.0), (0, 0.0), (0.5, 1.0)])
    def test_values(self, mu, expected):
        assert dprime(CalibratedGaussianLlrModel(mu)) == pytest.approx(expected, abs=1e-15)

    @given(st.floats(min_value=1e-6, max_value=0.4999))
    def test_dprime_from_eer(self, p):
        m = from_eer(p)
        assert abs(dprime(m) - m.sigma) <= 1e-12
        assert abs(dprime(m) + 2 * std_normal_quantile(eer_of_model(m))) <= 1e-10


class TestDensities:
    def test_peak(self):
        m = CalibratedGaussianLlrModel(2.0)
        assert target_pdf(m, 2.0) == pytest.approx(1 / (math.sqrt(2 * math.pi) * 2), rel=1e-15)

    def test_symmetric_at_zero(self):
        m = CalibratedGaussianLlrModel(2.0)
        assert target_pdf(m, 0.0) == nontarget_pdf(m, 0.0)

    def test_ratio_is_exp_x(self):
        m = CalibratedGaussianLlrModel(2.0)
        assert target_pdf(m, 1.0) / nontarget_pdf(m, 1.0) == pytest.approx(math.e, rel=1e-14)

    @pytest.mark.parametrize("mu", MU_GRID)
    def test_pointwise_idempotence(self, mu):
        m = CalibratedGaussianLlrModel(mu)
        x = np.linspace(-5, 5, 101)
        np.testing.assert_allclose(target_pdf(m, x), np.exp(x) * nontarget_pdf(m, x), rtol=1e-12)

    def test_degenerate_rejected(self):
        m = CalibratedGaussianLlrModel(0.0)
        for fn in (target_pdf, nontarget_pdf, llr_of_llr):
            with pytest.raises(DegenerateModelError):
                fn(m, 0.0)


class TestLlrOfLlr:
    @pytest.mark.parametrize("mu,x", [(2, 0.0), (2, 3.7), (0.125, -5.0)])
    def test_examples(self, mu, x):
        assert abs(llr_of_llr(CalibratedGaussianLlrModel(mu), x) - x) <= 1e-9

    @given(st.floats(min_value=1e-3, max_value=50), st.floats(min_value=-50, max_value=50))
    def test_identity(self, mu, x):
        assert abs(llr_of_llr(CalibratedGaussianLlrModel(mu), x) - x) <= 1e-9


class TestPosterior:
    def test_values(self):
        assert posterior_target(0.0, 0.5) == 0.5
        assert posterior_target(math.log(3), 0.5) == pytest.approx(0.75, abs=1e-15)
        assert posterior_target(1000.0, 0.5) == 1.0
        assert posterior_target(-1000.0, 0.5) == 0.0

    def test_bayes_rule(self):
        for x in np.linspace(-20, 20, 41):
            for prior in (0.01, 0.3, 0.9):
                r = math.exp(x)
                assert posterior_target(x, prior) == pytest.approx(prior * r / (prior * r + 1 - prior), rel=1e-12)

    @pytest.mark.parametrize("prior", [0.0, 1.0, -0.2])
    def test_domain(self, prior):
        with pytest.raises(DomainError):
            posterior_target(0.0, prior)


class TestGaussianPair:
    def test_valid_pair(self):
        d = validate_gaussian_pair(GaussianPair(-2.0, 2.0))
        assert d.passed and d.implied_target_mean == 2.0 and d.implied_target_sigma == 2.0

    def test_invalid_pair_mass(self):
        d = validate_gaussian_pair(GaussianPair(0.0, 1.0))
        assert not d.passed
        assert d.target_mass == pytest.approx(1.6487212707001282, rel=1e-15)

    def test_half_pair(self):
        d = validate_gaussian_pair(GaussianPair(-0.5, 1.0))
        assert d.passed and d.implied_target_mean == 0.5

    def test_mass_matches_quadrature(self):
        from llrcal.normal import expect_under_normal
        pair = GaussianPair(-0.3, 1.4)
        assert validate_gaussian_pair(pair).target_mass == pytest.approx(
            expect_under_normal(np.exp, pair.mu_d, pair.sigma_d), rel=1e-9)

    def test_sigma_domain(self):
        with pytest.raises(DomainError):
            GaussianPair(0.0, 0.0)


class TestTheoreticalCllr:
    def test_degenerate(self):
        assert theoretical_cllr(CalibratedGaussianLlrModel(0.0)) == 1.0

    @pytest.mark.parametrize("mu", sorted(MPMATH_CLLR))
    def test_against_mpmath(self, mu):
        got = theoretical_cllr(CalibratedGaussianLlrModel(mu))
        assert got == pytest.approx(MPMATH_CLLR[mu], rel=1e-8, abs=1e-10)

    def test_monte_carlo(self):
        rng = np.random.default_rng(20131105)
        x = rng.normal(2.0, 2.0, 10**7)
        vals = np.logaddexp(0, -x) / math.log(2)
        se = vals.std() / math.sqrt(x.size)
        assert abs(vals.mean() - theoretical_cllr(CalibratedGaussianLlrModel(2.0))) <= 3 * se

    def test_large_mu_small(self):
        # the exact value at mu=50 is ~1.25e-6, see MPMATH_CLLR
        assert theoretical_cllr(CalibratedGaussianLlrModel(50.0)) < 1e-5

    def test_strictly_decreasing(self):
        vals = [theoretical_cllr(CalibratedGaussianLlrModel(mu)) for mu in (0, 0.5, 1, 2, 4, 8)]
        assert all(b < a for a, b in zip(vals, vals[1:]))


class TestExpectationConstraints:
    @pytest.mark.parametrize("mu", MU_GRID)
    def test_unit_expectations(self, mu):
        e_r, e_inv = expectation_constraints(CalibratedGaussianLlrModel(mu))
        assert abs(e_r - 1) <= 1e-8 and abs(e_inv - 1) <= 1e-8

    @pytest.mark.parametrize("mu", MU_GRID)
    def test_normalization(self, mu):
        from llrcal.normal import expect_under_normal
        m = CalibratedGaussianLlrModel(mu)
        for mean in (m.target_mean, m.nontarget_mean):
            assert abs(expect_under_normal(np.ones_like, mean, m.sigma) - 1) <= 1e-10
