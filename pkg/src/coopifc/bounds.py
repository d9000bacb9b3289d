"""Comparison regions: strong-interference capacity, Kramer's genie-aided outer
bound, and the outer bound formed by intersecting the two informed-transmitter
regions."""

from __future__ import annotations

import enum
import math
from typing import NamedTuple

from coopifc.core_model import ChannelParams, RatePair, validate_channel
from coopifc.errors import NotStrongInterference
from coopifc.geometry import ConvexRegion, HalfspaceSet, intersect_regions
from coopifc.regions import DEFAULT_N_ALPHA, InformedTx, RegionSpec, region_boundary


class BoundKind(enum.Enum):
    STRONG_INTERFERENCE = "strong_interference"
    KRAMER_OUTER = "kramer_outer"
    INTERSECTION_T1_T2 = "intersection_t1_t2"


class Corners(NamedTuple):
    A: RatePair
    B: RatePair


def _half_log2(x: float) -> float:
    return 0.5 * math.log2(x)


def strong_interference_region(params: ChannelParams, allow_weak: bool = False) -> HalfspaceSet:
    """Capacity polytope under strong interference (a^2 >= 1 and b^2 >= 1).

    With ``allow_weak`` the same constraints are returned for any gains; they
    are then only a formula, not a capacity result.
    """
    validate_channel(params)
    a2, b2, p1, p2 = params.a**2, params.b**2, params.p1, params.p2
    if not allow_weak and (a2 < 1.0 or b2 < 1.0):
        raise NotStrongInterference(f"need a^2 >= 1 and b^2 >= 1, got a^2={a2:g}, b^2={b2:g}")
    return HalfspaceSet.of(
        [
            (1, 0, _half_log2(1 + p1)),
            (0, 1, _half_log2(1 + p2)),
            (1, 1, _half_log2(p1 + a2 * p2 + 1)),
            (1, 1, _half_log2(b2 * p1 + p2 + 1)),
        ]
    )


def kramer_sum_bounds(params: ChannelParams) -> tuple[float, float]:
    """The two genie-aided sum-rate bounds, (R2-side genie, R1-side genie)."""
    a2, b2, p1, p2 = params.a**2, params.b**2, params.p1, params.p2
    s_a = _half_log2((p1 + a2 * p2 + 1) * (p2 + 1) / (min(a2, 1.0) * p2 + 1))
    s_b = _half_log2((p2 + b2 * p1 + 1) * (p1 + 1) / (min(b2, 1.0) * p1 + 1))
    return s_a, s_b


def kramer_outer(params: ChannelParams) -> HalfspaceSet:
    validate_channel(params)
    s_a, s_b = kramer_sum_bounds(params)
    return HalfspaceSet.of(
        [
            (1, 0, _half_log2(1 + params.p1)),
            (0, 1, _half_log2(1 + params.p2)),
            (1, 1, s_a),
            (1, 1, s_b),
        ]
    )


def intersection_outer(params: ChannelParams, n_alpha: int = DEFAULT_N_ALPHA) -> ConvexRegion:
    """C^T1 ∩ C^T2; both gains must be weak since each factor needs its own condition."""
    validate_channel(params, require_weak_a=True, require_weak_b=True)
    t1 = region_boundary(RegionSpec(params, InformedTx.T1, n_alpha))
    t2 = region_boundary(RegionSpec(params, InformedTx.T2, n_alpha))
    return intersect_regions(t1, t2)


def corner_points(params: ChannelParams) -> Corners:
    """Extreme points where the informed-transmitter regions meet Kramer's bound.

    A is the T1-informed region at alpha = 1, B the T2-informed one at beta = 1.
    """
    validate_channel(params, require_weak_a=True, require_weak_b=True)
    a2, b2, p1, p2 = params.a**2, params.b**2, params.p1, params.p2
    A = RatePair(_half_log2(1 + p1), _half_log2((1 + b2 * p1 + p2) / (1 + b2 * p1)))
    B = RatePair(_half_log2((1 + a2 * p2 + p1) / (1 + a2 * p2)), _half_log2(1 + p2))
    return Corners(A, B)
