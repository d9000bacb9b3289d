"""Capacity regions of two-user Gaussian weak interference channels where one
transmitter knows both messages, with classical outer bounds and a
dirty-paper-coding verifier."""

from coopifc.errors import (
    CoopIFCError,
    EmptyInput,
    InsufficientSamples,
    NegativePower,
    NonFinite,
    NotPSD,
    NotStrongInterference,
    NotWeakInterference,
    SingularCovariance,
    Unbounded,
    ZeroNoise,
)
from coopifc.core_model import (
    ChannelParams,
    CoopSplit,
    Covariance2,
    RatePair,
    build_sigma,
    mi_gaussian_scalar,
    quadratic_form,
    validate_channel,
)
from coopifc.geometry import (
    ConvexRegion,
    HalfspaceSet,
    Point2,
    contains,
    convex_hull,
    halfspaces_to_region,
    intersect_regions,
    is_subset,
    pareto_frontier,
)
from coopifc.regions import (
    RegionSpec,
    TradeoffQuery,
    achievable_rates_t1,
    achievable_rates_t2,
    optimal_gamma,
    region_boundary_t1,
    region_boundary_t2,
    scalarized_boundary,
)
from coopifc.bounds import (
    BoundKind,
    corner_points,
    intersection_outer,
    kramer_outer,
    strong_interference_region,
)
from coopifc.dpc_verify import (
    CostaCoder,
    SimBatch,
    SimConfig,
    SimEstimate,
    costa_rate_analytic,
    estimate_rates_mc,
    simulate_batch,
    verify_point,
)

__version__ = "0.1.0"
