"""Channel model, cooperative covariance and scalar Gaussian rate kernels.

The channel is

    Y1 = X1 + a X2 + Z1
    Y2 = b X1 + X2 + Z2

with Z1, Z2 independent standard Gaussians. Noise variances are fixed at one;
other noise levels are expressed by rescaling the powers. Rates are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from coopifc.errors import NegativePower, NonFinite, NotPSD, NotWeakInterference, ZeroNoise

PSD_RTOL = 1e-12


@dataclass(frozen=True)
class ChannelParams:
    """Cross gains ``a``, ``b`` and transmit powers ``p1``, ``p2``."""

    a: float
    b: float
    p1: float
    p2: float

    @classmethod
    def from_squared(cls, a2: float, b2: float, p1: float, p2: float) -> "ChannelParams":
        """Build from squared gains, taking the nonnegative amplitude."""
        if a2 < 0 or b2 < 0:
            raise NegativePower("squared gains must be nonnegative")
        return cls(a=math.sqrt(a2), b=math.sqrt(b2), p1=p1, p2=p2)

    def swapped(self) -> "ChannelParams":
        """The same channel with the roles of the two users exchanged."""
        return ChannelParams(a=self.b, b=self.a, p1=self.p2, p2=self.p1)

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "p1": self.p1, "p2": self.p2}


@dataclass(frozen=True)
class CoopSplit:
    """Power split ``alpha`` (private share of P1) and cross-covariance ``gamma``."""

    alpha: float
    gamma: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.gamma)):
            raise NonFinite("alpha and gamma must be finite")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")


@dataclass(frozen=True)
class Covariance2:
    """Covariance of T1's cooperative component and T2's signal."""

    s11: float
    s12: float
    s22: float

    def as_matrix(self):
        return [[self.s11, self.s12], [self.s12, self.s22]]


class RatePair(NamedTuple):
    """Rates in bits per channel use."""

    r1: float
    r2: float


def validate_channel(
    params: ChannelParams, require_weak_b: bool = False, require_weak_a: bool = False
) -> ChannelParams:
    """Check power/finiteness invariants and, optionally, the weak-gain conditions.

    Returns ``params`` unchanged on success.
    """
    for name in ("a", "b", "p1", "p2"):
        if not math.isfinite(getattr(params, name)):
            raise NonFinite(f"{name} must be finite, got {getattr(params, name)}")
    if params.p1 < 0 or params.p2 < 0:
        raise NegativePower(f"powers must be nonnegative, got p1={params.p1}, p2={params.p2}")
    violated = []
    if require_weak_a and abs(params.a) > 1.0:
        violated.append("a")
    if require_weak_b and abs(params.b) > 1.0:
        violated.append("b")
    if violated:
        detail = ", ".join(f"|{g}| = {abs(getattr(params, g)):g} > 1" for g in violated)
        raise NotWeakInterference(f"weak interference required: {detail}", violated)
    return params


def psd_limit(params: ChannelParams, alpha: float) -> float:
    """Largest feasible |gamma| for the given split."""
    return math.sqrt(max(0.0, (1.0 - alpha) * params.p1 * params.p2))


def build_sigma(params: ChannelParams, split: CoopSplit) -> Covariance2:
    s11 = (1.0 - split.alpha) * params.p1
    s22 = params.p2
    g = split.gamma
    if g * g > s11 * s22 + PSD_RTOL * max(1.0, s11 * s22):
        raise NotPSD(
            f"gamma={g} exceeds sqrt((1-alpha)P1P2)={math.sqrt(max(s11 * s22, 0.0)):.6g}"
        )
    return Covariance2(s11=s11, s12=g, s22=s22)


def quadratic_form(params: ChannelParams, sigma: Covariance2) -> float:
    """h Sigma h^T for h = [b, 1]: the cooperative signal power at receiver 2."""
    b = params.b
    return b * b * sigma.s11 + 2.0 * b * sigma.s12 + sigma.s22


def mi_gaussian_scalar(signal_power: float, noise_power: float) -> float:
    if noise_power <= 0:
        raise ZeroNoise(f"noise power must be positive, got {noise_power}")
    if signal_power < 0:
        raise NegativePower(f"signal power must be nonnegative, got {signal_power}")
    return 0.5 * math.log2(1.0 + signal_power / noise_power)
