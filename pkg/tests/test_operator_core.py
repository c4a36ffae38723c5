import math

import mpmath
import numpy as np
import pytest

from logdrift.errors import DegenerateModel
from logdrift.operator_core import (
    INF_SYMBOL,
    ContractionConstants,
    OperatorParams,
    compute_lower_bound,
    epsilon_max,
    make_params,
    sigma_rate,
    symbol_lambda,
    symbol_modulus,
)


def dense_min_oracle(a, b, lo=1e-6, hi=1e2, n=10_000_000, chunks=20):
    """Independent lower-bound oracle: plain min over a huge log-spaced sample."""
    edges = np.logspace(math.log10(lo), math.log10(hi), chunks + 1)
    best = math.inf
    for i in range(chunks):
        p = np.logspace(math.log10(edges[i]), math.log10(edges[i + 1]), n // chunks)
        best = min(best, float(symbol_modulus(p, a, b).min()))
    return best


class TestSymbol:
    def test_ln_one_is_zero(self):
        p = OperatorParams(0.0, 1.0, 0.5)
        assert symbol_lambda(1.0, p) == pytest.approx(0.0 - 1.0j)

    def test_at_p_equals_e_a(self):
        p = OperatorParams(1.0, 2.0, 0.5)
        lam = symbol_lambda(math.e, p)
        assert lam.real == pytest.approx(0.0, abs=1e-15)
        assert lam.imag == pytest.approx(-2.0 * math.e)

    def test_against_high_precision(self):
        # ln 2 - 2i at p=2, a=0, b=1; modulus cross-checked with mpmath
        p = OperatorParams(0.0, 1.0, 0.5)
        lam = symbol_lambda(2.0, p)
        mpmath.mp.dps = 50
        ref_re = mpmath.log(2)
        ref_mod = mpmath.sqrt(mpmath.log(2) ** 2 + 4)
        assert lam.real == pytest.approx(float(ref_re), rel=1e-15)
        assert abs(lam) == pytest.approx(float(ref_mod), rel=1e-15)

    def test_zero_frequency_sentinel(self):
        p = OperatorParams(0.0, 1.0, 0.5)
        assert symbol_lambda(0.0, p) is INF_SYMBOL
        assert abs(symbol_lambda(0.0, p)) == math.inf

    def test_conjugate_symmetry(self):
        p = OperatorParams(0.7, -1.3, 0.5)
        rng = np.random.default_rng(0)
        for q in rng.uniform(-50, 50, size=200):
            if q == 0.0:
                continue
            lam_p = symbol_lambda(q, p)
            lam_m = symbol_lambda(-q, p)
            assert lam_m.real == pytest.approx(lam_p.real, rel=1e-14)
            assert lam_m.imag == pytest.approx(-lam_p.imag, rel=1e-14)


class TestLowerBound:
    def test_matches_dense_oracle(self):
        c = compute_lower_bound(0.0, 1.0)
        oracle = dense_min_oracle(0.0, 1.0)
        assert c == pytest.approx(oracle, abs=1e-6)
        assert c == pytest.approx(0.7798, abs=5e-4)

    def test_minimizer_stationarity(self):
        # at the minimum of ln^2 p + p^2 the condition ln p = -p^2 holds
        p = np.logspace(-6, 2, 2_000_001)
        vals = symbol_modulus(p, 0.0, 1.0)
        p_star = p[np.argmin(vals)]
        assert math.log(p_star) == pytest.approx(-p_star**2, abs=1e-4)
        assert p_star == pytest.approx(0.6529, abs=1e-3)

    def test_monotone_in_b(self):
        cs = [compute_lower_bound(0.0, b) for b in (1.0, 2.0, 4.0, 8.0)]
        assert all(c1 <= c2 + 1e-12 for c1, c2 in zip(cs, cs[1:]))

    def test_symmetric_in_b(self):
        assert compute_lower_bound(0.5, 2.0) == pytest.approx(
            compute_lower_bound(0.5, -2.0), rel=1e-12
        )

    def test_positive_for_various_params(self):
        for a, b in [(0.0, 1.0), (1.0, 2.0), (-1.0, 0.5), (3.0, 0.1)]:
            assert compute_lower_bound(a, b) > 0.0

    def test_certified_on_log_sample(self):
        for a, b in [(0.0, 1.0), (1.0, 2.0), (-1.0, 0.5)]:
            c = compute_lower_bound(a, b)
            p = np.logspace(-6, 2, 1_000_000)
            assert symbol_modulus(p, a, b).min() >= c - 1e-9

    def test_rejects_zero_drift(self):
        with pytest.raises(DegenerateModel):
            compute_lower_bound(0.0, 0.0)


class TestConstants:
    def test_epsilon_max_all_ones(self):
        assert epsilon_max(1.0, 1.0, 1.0, 1.0, 0.0) == pytest.approx(1.0)

    def test_epsilon_max_substitution(self):
        assert epsilon_max(0.5, 2.0, 4.0, 0.5, 1.0) == pytest.approx(0.25)

    def test_epsilon_max_with_certified_bound(self, params01):
        val = epsilon_max(1.0, params01.c_ab, 1.0, 1.0, 2.0)
        assert val == pytest.approx(0.2599, abs=2e-4)

    def test_epsilon_max_degenerate(self):
        with pytest.raises(DegenerateModel):
            epsilon_max(1.0, 1.0, 0.0, 1.0, 0.0)
        with pytest.raises(DegenerateModel):
            epsilon_max(1.0, 1.0, 1.0, 0.0, 0.0)

    def test_sigma_zero_scaling(self):
        assert sigma_rate(0.0, 1.0, 1.0, 1.0) == 0.0

    def test_sigma_substitution(self):
        assert sigma_rate(0.1, 1.0, 1.0, 1.0) == pytest.approx(0.1)

    def test_sigma_at_threshold_is_rho_over_norm(self, params01):
        # substituting epsilon_max into sigma cancels C: sigma = rho/(u0_l2+1)
        u0_l2 = 2.0
        eps = epsilon_max(1.0, params01.c_ab, 1.0, 1.0, u0_l2)
        sig = sigma_rate(eps, 1.0, 1.0, params01.c_ab)
        assert sig == pytest.approx(1.0 / 3.0, rel=1e-12)
        assert sig < 1.0

    def test_admissible_epsilon_gives_sigma_below_one(self, params01):
        rng = np.random.default_rng(7)
        for _ in range(50):
            rho = rng.uniform(0.05, 1.0)
            m = rng.uniform(0.1, 5.0)
            l1 = rng.uniform(0.1, 5.0)
            u0 = rng.uniform(0.0, 10.0)
            eps_m = epsilon_max(rho, params01.c_ab, m, l1, u0)
            eps = rng.uniform(0.0, 1.0) * eps_m
            sig = sigma_rate(eps, m, l1, params01.c_ab)
            assert sig <= rho / (u0 + 1.0) + 1e-12
            if u0 > 0.0:
                assert sig < 1.0

    def test_constants_bundle(self, params01):
        c = ContractionConstants.from_model(
            epsilon=0.1, rho=1.0, M=1.0, kernel_l1=1.0, u0_l2=2.0,
            c_ab=params01.c_ab,
        )
        assert c.sigma == pytest.approx(0.1 / params01.c_ab)
        assert c.epsilon_max == pytest.approx(params01.c_ab / 3.0)


class TestOperatorParams:
    def test_rejects_zero_b(self):
        with pytest.raises(DegenerateModel):
            OperatorParams(0.0, 0.0, 1.0)

    def test_rejects_nonpositive_bound(self):
        with pytest.raises(DegenerateModel):
            OperatorParams(0.0, 1.0, 0.0)

    def test_make_params_caches_bound(self):
        p = make_params(0.0, 1.0)
        assert p.c_ab == pytest.approx(compute_lower_bound(0.0, 1.0), rel=1e-12)
