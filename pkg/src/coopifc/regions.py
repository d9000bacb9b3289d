"""Achievable rates and capacity regions with one fully informed transmitter.

When T1 knows both messages it spends ``alpha * P1`` on its own message,
dirty-paper coded against everything else seen at receiver 1, and the rest on
helping T2 carry message 2 with cross-covariance ``gamma``. Receiver 2 treats
T1's private signal as Gaussian noise. The T2-informed region follows by
exchanging the users.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from coopifc.core_model import (
    ChannelParams,
    CoopSplit,
    RatePair,
    build_sigma,
    mi_gaussian_scalar,
    psd_limit,
    quadratic_form,
    validate_channel,
)
from coopifc.geometry import ConvexRegion, Point2, convex_hull

DEFAULT_N_ALPHA = 1024
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class InformedTx(enum.Enum):
    T1 = 1
    T2 = 2


@dataclass(frozen=True)
class TradeoffQuery:
    mu: float

    def __post_init__(self):
        if not (math.isfinite(self.mu) and self.mu >= 0):
            raise ValueError(f"mu must be finite and nonnegative, got {self.mu}")


@dataclass(frozen=True)
class RegionSpec:
    params: ChannelParams
    informed_tx: InformedTx = InformedTx.T1
    n_alpha: int = DEFAULT_N_ALPHA

    def __post_init__(self):
        if self.n_alpha < 2:
            raise ValueError(f"n_alpha must be at least 2, got {self.n_alpha}")


class ScalarizedPoint(NamedTuple):
    alpha_star: float
    value: float
    rates: RatePair


def achievable_rates_t1(params: ChannelParams, split: CoopSplit) -> RatePair:
    validate_channel(params, require_weak_b=True)
    sigma = build_sigma(params, split)
    private = split.alpha * params.p1
    r1 = mi_gaussian_scalar(private, 1.0)
    # Guard tiny negative values from rounding in h Sigma h^T.
    r2 = mi_gaussian_scalar(
        max(quadratic_form(params, sigma), 0.0), 1.0 + params.b**2 * private
    )
    return RatePair(r1, r2)


def achievable_rates_t2(params: ChannelParams, split: CoopSplit) -> RatePair:
    """Rates when T2 is informed; ``split.alpha`` is T2's private share of P2."""
    validate_channel(params, require_weak_a=True)
    swapped = achievable_rates_t1(params.swapped(), split)
    return RatePair(swapped.r2, swapped.r1)


def optimal_gamma(params: ChannelParams, alpha: float) -> float:
    """Cross-covariance maximizing receiver 2's rate: full correlation, signed like b."""
    g = psd_limit(params, alpha)
    return -g if params.b < 0 else g


def _sweep_t1(params: ChannelParams, n_alpha: int):
    # Vectorized form of achievable_rates_t1 along the optimal-gamma curve.
    alphas = np.linspace(0.0, 1.0, n_alpha)
    b, p1, p2 = params.b, params.p1, params.p2
    private = alphas * p1
    coop = np.sqrt(np.maximum((1.0 - alphas) * p1 * p2, 0.0))
    hsh = b * b * (1.0 - alphas) * p1 + 2.0 * abs(b) * coop + p2
    r1 = 0.5 * np.log2(1.0 + private)
    r2 = 0.5 * np.log2(1.0 + hsh / (1.0 + b * b * private))
    return alphas, r1, r2


def sweep_t1(params: ChannelParams, n_alpha: int = DEFAULT_N_ALPHA):
    """Return ``(alphas, r1, r2)`` arrays along the uniform alpha grid."""
    validate_channel(params, require_weak_b=True)
    return _sweep_t1(params, n_alpha)


def sweep_t2(params: ChannelParams, n_alpha: int = DEFAULT_N_ALPHA):
    """Return ``(betas, r1, r2)`` for the T2-informed channel."""
    validate_channel(params, require_weak_a=True)
    betas, r2, r1 = _sweep_t1(params.swapped(), n_alpha)
    return betas, r1, r2


def _hull_of_sweep(r1, r2) -> ConvexRegion:
    pts = [Point2(float(x), float(y)) for x, y in zip(r1, r2)]
    # Axis anchors and the origin close the region below its frontier.
    pts += [Point2(float(r1[-1]), 0.0), Point2(0.0, float(r2[0])), Point2(0.0, 0.0)]
    return convex_hull(pts)


def region_boundary_t1(spec: RegionSpec) -> ConvexRegion:
    """Gaussian-input capacity region with T1 informed, as a hulled alpha sweep."""
    _, r1, r2 = sweep_t1(spec.params, spec.n_alpha)
    return _hull_of_sweep(r1, r2)


def region_boundary_t2(spec: RegionSpec) -> ConvexRegion:
    _, r1, r2 = sweep_t2(spec.params, spec.n_alpha)
    # Reverse so the anchors pick the beta=1 R2 cap and beta=0 R1 extreme.
    return _hull_of_sweep(r1[::-1], r2[::-1])


def region_boundary(spec: RegionSpec) -> ConvexRegion:
    if spec.informed_tx is InformedTx.T1:
        return region_boundary_t1(spec)
    return region_boundary_t2(spec)


def _objective(params: ChannelParams, mu: float, alpha: float) -> float:
    r = achievable_rates_t1(params, CoopSplit(alpha, optimal_gamma(params, alpha)))
    return r.r1 + mu * r.r2


def scalarized_boundary(
    params: ChannelParams, q: TradeoffQuery, n_grid: int = 256, xtol: float = 1e-8
) -> ScalarizedPoint:
    """Maximize ``R1 + mu*R2`` over the power split.

    A coarse grid locates the best cell, golden-section search refines it, and
    the refined point competes with the cell's endpoints. Ties go to the
    smaller alpha.
    """
    validate_channel(params, require_weak_b=True)
    mu = q.mu
    grid = np.linspace(0.0, 1.0, n_grid)
    _, r1, r2 = _sweep_t1(params, n_grid)
    vals = r1 + mu * r2
    k = int(np.argmax(vals))  # first maximizer, i.e. smallest alpha
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, n_grid - 1)]

    f = lambda t: _objective(params, mu, t)  # noqa: E731
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > xtol:
        if f1 >= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = f(x2)

    candidates = sorted({float(grid[k]), float(lo), float(hi), 0.5 * (lo + hi)})
    best_alpha, best_val = candidates[0], f(candidates[0])
    for a in candidates[1:]:
        v = f(a)
        if v > best_val + 1e-15:
            best_alpha, best_val = a, v
    rates = achievable_rates_t1(params, CoopSplit(best_alpha, optimal_gamma(params, best_alpha)))
    return ScalarizedPoint(best_alpha, best_val, rates)
