import math

import numpy as np
import pytest

from coopifc import (
    ChannelParams,
    CoopSplit,
    CostaCoder,
    InsufficientSamples,
    NotWeakInterference,
    SimConfig,
    achievable_rates_t1,
    costa_rate_analytic,
    estimate_rates_mc,
    optimal_gamma,
    simulate_batch,
    verify_point,
)
from coopifc.dpc_verify import gaussian_mi

HALF_LOG2_7 = 1.40367746102880205372098465862
A_R2 = 0.826038348289846574378696864747


def costa_closed_form(p, q, lam):
    """Textbook Costa rate with independent X (power p), S (power q), unit noise."""
    num = p * (p + q + 1)
    den = p * q * (1 - lam) ** 2 + (p + lam**2 * q)
    return 0.5 * math.log2(num / den)


class TestGaussianMI:
    def test_scalar_awgn(self):
        # X ~ N(0, 3), Y = X + Z: I = 0.5 log2(4) = 1
        cov = np.array([[3.0, 3.0], [3.0, 4.0]])
        assert gaussian_mi(cov, [0], [1]) == pytest.approx(1.0, abs=1e-14)

    def test_constant_component(self):
        cov = np.array([[0.0, 0.0], [0.0, 1.0]])
        assert gaussian_mi(cov, [0], [1]) == 0.0


class TestCostaAnalytic:
    def test_alpha_one(self, ref):
        assert costa_rate_analytic(CostaCoder.for_capacity(ref, 1.0)) == pytest.approx(HALF_LOG2_7, abs=1e-12)

    def test_alpha_zero(self, ref):
        assert costa_rate_analytic(CostaCoder.for_capacity(ref, 0.0)) == 0.0

    def test_alpha_half(self, ref):
        coder = CostaCoder.for_capacity(ref, 0.5)
        assert coder.lam == 0.75
        assert costa_rate_analytic(coder) == pytest.approx(1.0, abs=1e-12)

    def test_matches_textbook_formula(self, ref):
        coder = CostaCoder.for_capacity(ref, 0.5)
        want = costa_closed_form(3.0, coder.interference_power(), 0.75)
        assert costa_rate_analytic(coder) == pytest.approx(want, abs=1e-12)

    def test_suboptimal_lambda_loses(self, ref):
        coder = CostaCoder(lam=0.3, alpha=0.5, params=ref)
        assert costa_rate_analytic(coder) < 1.0 - 1e-3

    def test_no_interference_at_all(self):
        # a = 0 and alpha = 1 leave S identically zero.
        p = ChannelParams(0.0, 0.5, 6.0, 6.0)
        assert costa_rate_analytic(CostaCoder.for_capacity(p, 1.0)) == pytest.approx(HALF_LOG2_7, abs=1e-12)

    def test_identity_random(self):
        rng = np.random.default_rng(30)
        for _ in range(100):
            p = ChannelParams(rng.uniform(-1, 1) * 3, rng.uniform(-1, 1), rng.uniform(0.01, 40), rng.uniform(0.01, 40))
            alpha = rng.uniform()
            got = costa_rate_analytic(CostaCoder.for_capacity(p, alpha))
            assert abs(got - 0.5 * math.log2(1 + alpha * p.p1)) <= 1e-9


class TestSimulateBatch:
    def test_sample_covariance(self, ref):
        split = CoopSplit(0.5, 2.0)  # general feasible gamma, two-factor construction
        n = 1_000_000
        bt = simulate_batch(ref, split, SimConfig(n, 42))
        pairs = {(0, 0): (bt.x1c, bt.x1c, 3.0), (0, 1): (bt.x1c, bt.x2, 2.0), (1, 1): (bt.x2, bt.x2, 6.0)}
        for u, v, target in pairs.values():
            prod = u * v
            se = prod.std() / math.sqrt(n)
            assert abs(prod.mean() - target) <= 5 * se

    def test_channel_equations_exact(self, ref):
        bt = simulate_batch(ref, CoopSplit(0.3, optimal_gamma(ref, 0.3)), SimConfig(2000, 1))
        np.testing.assert_array_equal(bt.y1, bt.x1p + bt.x1c + ref.a * bt.x2 + bt.z1)
        np.testing.assert_array_equal(bt.y2, ref.b * (bt.x1p + bt.x1c) + bt.x2 + bt.z2)
        assert len({len(v) for v in vars(bt).values()}) == 1

    def test_silent_t2(self):
        bt = simulate_batch(ChannelParams(0.3, 0.3, 6.0, 0.0), CoopSplit(0.5, 0.0), SimConfig(1000, 3))
        assert not np.any(bt.x2)

    def test_deterministic(self, ref):
        split = CoopSplit(0.5, optimal_gamma(ref, 0.5))
        a = simulate_batch(ref, split, SimConfig(5000, 9))
        b = simulate_batch(ref, split, SimConfig(5000, 9))
        for name in vars(a):
            assert getattr(a, name).tobytes() == getattr(b, name).tobytes()

    def test_min_samples(self):
        with pytest.raises(InsufficientSamples):
            SimConfig(999, 1)


class TestEstimateRates:
    def test_ref_half(self, ref):
        split = CoopSplit(0.5, optimal_gamma(ref, 0.5))
        e1, e2 = estimate_rates_mc(ref, split, SimConfig(1_000_000, 7))
        closed = achievable_rates_t1(ref, split)
        assert abs(e1.rate_hat - 1.0) <= 0.02
        assert abs(e2.rate_hat - closed.r2) <= 0.02
        assert 0 < e1.stderr < 0.01 and 0 < e2.stderr < 0.01

    def test_ref_corner(self, ref):
        _, e2 = estimate_rates_mc(ref, CoopSplit(1.0, 0.0), SimConfig(1_000_000, 7))
        assert abs(e2.rate_hat - A_R2) <= 0.02

    def test_zero_power(self):
        e1, e2 = estimate_rates_mc(ChannelParams(0.4, 0.4, 0.0, 0.0), CoopSplit(0.5, 0.0), SimConfig(1000, 1))
        assert (e1.rate_hat, e2.rate_hat) == (0.0, 0.0)

    def test_sinr_identity(self, ref):
        # Receiver-2 SINR from the sampled signals against the analytic SINR.
        alpha = 0.4
        split = CoopSplit(alpha, optimal_gamma(ref, alpha))
        n, k = 1_000_000, 10
        bt = simulate_batch(ref, split, SimConfig(n, 11))
        b = ref.b

        def sinr(sl):
            coop = b * bt.x1c[sl] + bt.x2[sl]
            return np.mean(coop**2) / (1 + b * b * np.mean(bt.x1p[sl] ** 2))

        subs = [sinr(slice(i * n // k, (i + 1) * n // k)) for i in range(k)]
        se = np.std(subs, ddof=1) / math.sqrt(k)
        analytic = (b * b * (1 - alpha) * 6 + 2 * b * split.gamma + 6) / (1 + b * b * alpha * 6)
        assert abs(sinr(slice(None)) - analytic) <= 5 * se

    @pytest.mark.slow
    def test_consistency_over_seeds(self, ref):
        alpha = 0.5
        split = CoopSplit(alpha, optimal_gamma(ref, alpha))
        closed = achievable_rates_t1(ref, split)
        hits = 0
        for seed in range(100):
            e1, e2 = estimate_rates_mc(ref, split, SimConfig(1_000_000, seed))
            hits += abs(e1.rate_hat - closed.r1) <= 4 * e1.stderr and abs(e2.rate_hat - closed.r2) <= 4 * e2.stderr
        assert hits >= 95


class TestVerifyPoint:
    @pytest.mark.parametrize("alpha", [0.0, 0.25, 0.5, 0.75, 1.0])
    def test_ref_passes(self, ref, alpha):
        rep = verify_point(ref, alpha, SimConfig(1_000_000, 42), tol=0.02)
        assert rep.passed, rep.checks
        assert rep.costa_residual <= 1e-9

    def test_tiny_tolerance_fails_mc_only(self, ref):
        rep = verify_point(ref, 0.5, SimConfig(1000, 42), tol=1e-9)
        assert rep.checks["costa_identity"]
        assert not rep.checks["mc_r1"] and not rep.checks["mc_r2"]
        assert not rep.passed

    def test_strong_b_raises(self):
        with pytest.raises(NotWeakInterference):
            verify_point(ChannelParams(0.5, 1.2, 6, 6), 0.5, SimConfig(1000, 1))

    def test_report_serializable(self, ref):
        import json

        d = verify_point(ref, 0.25, SimConfig(2000, 5)).to_dict()
        assert json.loads(json.dumps(d))["metadata"]["generator"] == "numpy.random.PCG64"
