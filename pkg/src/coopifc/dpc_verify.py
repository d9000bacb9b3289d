"""Checks of the dirty-paper-coding achievability at the Gaussian-statistics level.

Two routes are provided. The analytic route evaluates the Costa rate
``I(U;Y1) - I(U;S)`` by exact covariance algebra, with ``S = a X2 + X1c`` the
interference known to T1 and ``U = X1p + lam * S`` the auxiliary variable.
The Monte-Carlo route samples the channel and re-evaluates both receivers'
rates from empirical covariances.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from coopifc.core_model import (
    ChannelParams,
    CoopSplit,
    RatePair,
    build_sigma,
    validate_channel,
)
from coopifc.errors import InsufficientSamples, SingularCovariance
from coopifc.regions import achievable_rates_t1, optimal_gamma

MIN_SAMPLES = 1000
N_SUBBATCHES = 10
GENERATOR = "numpy.random.PCG64"


@dataclass(frozen=True)
class CostaCoder:
    """Costa auxiliary construction ``U = X1p + lam * S`` for a given split."""

    lam: float
    alpha: float
    params: ChannelParams

    @classmethod
    def for_capacity(cls, params: ChannelParams, alpha: float) -> "CostaCoder":
        p = alpha * params.p1
        return cls(lam=p / (1.0 + p), alpha=alpha, params=params)

    @property
    def gamma(self) -> float:
        return optimal_gamma(self.params, self.alpha)

    def interference_power(self) -> float:
        """Variance of S = a X2 + X1c at the optimal cross-covariance."""
        prm = self.params
        return (
            prm.a**2 * prm.p2 + 2.0 * prm.a * self.gamma + (1.0 - self.alpha) * prm.p1
        )


@dataclass(frozen=True)
class SimConfig:
    n_samples: int = 1_000_000
    seed: int = 42
    noise_variance: float = field(default=1.0, init=False)

    def __post_init__(self):
        if self.n_samples < MIN_SAMPLES:
            raise InsufficientSamples(
                f"need at least {MIN_SAMPLES} samples, got {self.n_samples}"
            )
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class SimEstimate:
    rate_hat: float
    stderr: float
    n_samples: int
    seed: int


@dataclass(frozen=True, eq=False)
class SimBatch:
    x1p: np.ndarray
    x1c: np.ndarray
    x2: np.ndarray
    z1: np.ndarray
    z2: np.ndarray
    y1: np.ndarray
    y2: np.ndarray

    def __len__(self):
        return len(self.x1p)

    def chunk(self, i: int, k: int) -> "SimBatch":
        n = len(self)
        sl = slice(i * n // k, (i + 1) * n // k)
        return SimBatch(**{name: arr[sl] for name, arr in vars(self).items()})


def gaussian_mi(cov: np.ndarray, ia, ib) -> float:
    """Mutual information in bits between two index groups of a Gaussian vector.

    Components with zero variance are constants and are dropped first.
    """
    cov = np.asarray(cov, dtype=float)
    scale = max(float(np.max(np.abs(np.diag(cov)))), 1.0)
    ia = [i for i in ia if cov[i, i] > 1e-14 * scale]
    ib = [i for i in ib if cov[i, i] > 1e-14 * scale]
    if not ia or not ib:
        return 0.0
    logdets = []
    for idx in (ia, ib, ia + ib):
        sign, ld = np.linalg.slogdet(cov[np.ix_(idx, idx)])
        if sign <= 0:
            raise SingularCovariance(f"covariance block {idx} is singular")
        logdets.append(ld)
    return float(0.5 * (logdets[0] + logdets[1] - logdets[2]) / math.log(2.0))


def _costa_rate(cov_u_y1_s: np.ndarray) -> float:
    # Indices: 0 = U, 1 = Y1, 2 = S.
    return gaussian_mi(cov_u_y1_s, [0], [1]) - gaussian_mi(cov_u_y1_s, [0], [2])


def costa_rate_analytic(coder: CostaCoder) -> float:
    p = coder.alpha * coder.params.p1
    q = coder.interference_power()
    lam = coder.lam
    # (U, Y1, S) = M (X1p, S, Z1) with independent X1p, S, Z1.
    m = np.array([[1.0, lam, 0.0], [1.0, 1.0, 1.0], [0.0, 1.0, 0.0]])
    base = np.diag([p, max(q, 0.0), 1.0])
    return _costa_rate(m @ base @ m.T)


def simulate_batch(params: ChannelParams, split: CoopSplit, cfg: SimConfig) -> SimBatch:
    """Draw one batch of channel uses; fully determined by ``cfg.seed``."""
    sigma = build_sigma(params, split)
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    g = rng.standard_normal((5, cfg.n_samples))
    x2 = math.sqrt(params.p2) * g[0]
    if params.p2 > 0:
        lead = split.gamma / params.p2
        resid = max(sigma.s11 - split.gamma**2 / params.p2, 0.0)
    else:
        lead, resid = 0.0, sigma.s11
    x1c = lead * x2 + math.sqrt(resid) * g[1]
    x1p = math.sqrt(split.alpha * params.p1) * g[2]
    z1, z2 = g[3], g[4]
    y1 = x1p + x1c + params.a * x2 + z1
    y2 = params.b * (x1p + x1c) + x2 + z2
    return SimBatch(x1p=x1p, x1c=x1c, x2=x2, z1=z1, z2=z2, y1=y1, y2=y2)


def _mean_sq(v: np.ndarray) -> float:
    return float(np.dot(v, v) / len(v))


def _rates_from_batch(params: ChannelParams, batch: SimBatch) -> tuple[float, float]:
    p_hat = _mean_sq(batch.x1p)
    if p_hat > 0:
        s = batch.y1 - batch.x1p - batch.z1
        lam = p_hat / (p_hat + _mean_sq(batch.z1))
        u = batch.x1p + lam * s
        data = np.vstack([u, batch.y1, s])
        r1 = float(_costa_rate(data @ data.T / len(batch)))
    else:
        r1 = 0.0
    # Receiver 2: cooperative part via empirical Sigma, private part as noise.
    c = np.vstack([batch.x1c, batch.x2])
    sig = c @ c.T / len(batch)
    b = params.b
    hsh = b * b * sig[0, 0] + 2.0 * b * sig[0, 1] + sig[1, 1]
    r2 = 0.5 * math.log2(1.0 + max(float(hsh), 0.0) / (1.0 + b * b * p_hat))
    return r1, r2


def estimate_rates_mc(
    params: ChannelParams, split: CoopSplit, cfg: SimConfig
) -> tuple[SimEstimate, SimEstimate]:
    """Empirical receiver rates with batch-split standard errors."""
    if cfg.n_samples < MIN_SAMPLES:
        raise InsufficientSamples(f"need at least {MIN_SAMPLES} samples")
    batch = simulate_batch(params, split, cfg)
    r1, r2 = _rates_from_batch(params, batch)
    subs = np.array(
        [_rates_from_batch(params, batch.chunk(i, N_SUBBATCHES)) for i in range(N_SUBBATCHES)]
    )
    se = subs.std(axis=0, ddof=1) / math.sqrt(N_SUBBATCHES)
    return (
        SimEstimate(r1, float(se[0]), cfg.n_samples, cfg.seed),
        SimEstimate(r2, float(se[1]), cfg.n_samples, cfg.seed),
    )


@dataclass
class VerifyReport:
    params: dict
    alpha: float
    gamma: float
    tol: float
    analytic: dict
    monte_carlo: dict
    costa_residual: float
    checks: dict
    passed: bool
    metadata: dict

    def to_dict(self) -> dict:
        return asdict(self)


COSTA_TOL = 1e-9


def verify_point(
    params: ChannelParams, alpha: float, cfg: SimConfig, tol: float = 0.02
) -> VerifyReport:
    """Compare closed-form, Costa and Monte-Carlo rates at one split.

    Check failures are reported in the result; only invalid inputs raise.
    """
    validate_channel(params, require_weak_b=True)
    gamma = optimal_gamma(params, alpha)
    split = CoopSplit(alpha, gamma)
    closed: RatePair = achievable_rates_t1(params, split)
    costa = costa_rate_analytic(CostaCoder.for_capacity(params, alpha))
    residual = abs(costa - closed.r1)
    e1, e2 = estimate_rates_mc(params, split, cfg)
    checks = {
        "costa_identity": bool(residual <= COSTA_TOL),
        "mc_r1": bool(abs(e1.rate_hat - closed.r1) <= tol),
        "mc_r2": bool(abs(e2.rate_hat - closed.r2) <= tol),
    }
    return VerifyReport(
        params=params.as_dict(),
        alpha=alpha,
        gamma=gamma,
        tol=tol,
        analytic={"r1": closed.r1, "r2": closed.r2, "costa_r1": costa},
        monte_carlo={"r1": asdict(e1), "r2": asdict(e2)},
        costa_residual=residual,
        checks=checks,
        passed=all(checks.values()),
        metadata={
            "log_base": 2,
            "generator": GENERATOR,
            "seed": cfg.seed,
            "n_samples": cfg.n_samples,
            "n_subbatches": N_SUBBATCHES,
        },
    )
