"""Planar convex geometry for down-closed rate regions.

A :class:`ConvexRegion` stores the vertices of a convex polygon in canonical
order (counterclockwise, starting at the lexicographic minimum). The region it
denotes is that polygon's down-closure within the nonnegative quadrant: every
operation that compares or combines regions works on the down-closed set.
Degenerate polygons (a point or a segment) are stored with one or two vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from coopifc.errors import EmptyInput, NonFinite, Unbounded

TOL = 1e-9
_FEAS_TOL = 1e-12


class Point2(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class ConvexRegion:
    vertices: tuple[Point2, ...]

    @classmethod
    def empty(cls) -> "ConvexRegion":
        return cls(())

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def __len__(self):
        return len(self.vertices)

    def as_list(self) -> list[list[float]]:
        return [[v.x, v.y] for v in self.vertices]


@dataclass(frozen=True)
class HalfspaceSet:
    """Constraints ``c1*R1 + c2*R2 <= d``; ``R1, R2 >= 0`` is implied."""

    constraints: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        for c1, c2, d in self.constraints:
            if not all(math.isfinite(v) for v in (c1, c2, d)):
                raise NonFinite(f"non-finite constraint {(c1, c2, d)}")
            if c1 == 0 and c2 == 0:
                raise ValueError("constraint normal must be nonzero")

    @classmethod
    def of(cls, constraints: Iterable[Sequence[float]]) -> "HalfspaceSet":
        return cls(tuple((float(c1), float(c2), float(d)) for c1, c2, d in constraints))

    def __len__(self):
        return len(self.constraints)

    def __iter__(self):
        return iter(self.constraints)


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _dedup(points: Sequence[Point2], tol: float = TOL) -> list[Point2]:
    out: list[Point2] = []
    for p in sorted(points):
        dup = False
        for q in reversed(out):
            if p.x - q.x > tol:
                break
            if abs(p.y - q.y) <= tol:
                dup = True
                break
        if not dup:
            out.append(p)
    return out


def _turns_left(o, a, b) -> bool:
    # Strict left turn, with collinearity judged on the sine of the turn angle.
    c = _cross(o, a, b)
    scale = math.hypot(a[0] - o[0], a[1] - o[1]) * math.hypot(b[0] - a[0], b[1] - a[1])
    return c > 1e-12 * scale


def convex_hull(points: Iterable[Sequence[float]]) -> ConvexRegion:
    """Minimal convex hull vertex list in canonical order (monotone chain)."""
    pts = [Point2(float(p[0]), float(p[1])) for p in points]
    if not pts:
        raise EmptyInput("convex_hull needs at least one point")
    if not all(math.isfinite(p.x) and math.isfinite(p.y) for p in pts):
        raise NonFinite("points must be finite")
    pts = _dedup(pts)
    if len(pts) <= 2:
        return ConvexRegion(tuple(pts))

    lower: list[Point2] = []
    for p in pts:
        while len(lower) >= 2 and not _turns_left(lower[-2], lower[-1], p):
            lower.pop()
        lower.append(p)
    upper: list[Point2] = []
    for p in reversed(pts):
        while len(upper) >= 2 and not _turns_left(upper[-2], upper[-1], p):
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        hull = hull[:1]
    return ConvexRegion(tuple(hull))


def down_closure(region: ConvexRegion) -> ConvexRegion:
    """Explicit polygon of the down-closed region, origin and axis feet included."""
    if region.is_empty:
        return region
    pts = [Point2(0.0, 0.0)]
    for v in region.vertices:
        x, y = max(v.x, 0.0), max(v.y, 0.0)
        pts.extend((Point2(x, y), Point2(x, 0.0), Point2(0.0, y)))
    return convex_hull(pts)


def _edges_as_halfspaces(poly: ConvexRegion) -> list[tuple[float, float, float]]:
    # Outward-facing constraints of a CCW polygon with >= 3 vertices.
    vs = poly.vertices
    out = []
    for i, p in enumerate(vs):
        q = vs[(i + 1) % len(vs)]
        c1, c2 = q.y - p.y, -(q.x - p.x)
        out.append((c1, c2, c1 * p.x + c2 * p.y))
    return out


def _clip(poly: np.ndarray, c1: float, c2: float, d: float) -> np.ndarray:
    """Sutherland-Hodgman clip of a convex polygon (k x 2 array) by c1*x + c2*y <= d."""
    if len(poly) == 0:
        return poly
    norm = math.hypot(c1, c2)
    f = (poly @ np.array([c1, c2]) - d) / norm
    nxt = np.roll(poly, -1, axis=0)
    fq = np.roll(f, -1)
    keep = f <= _FEAS_TOL
    cross = ((f < -_FEAS_TOL) & (fq > _FEAS_TOL)) | ((f > _FEAS_TOL) & (fq < -_FEAS_TOL))
    t = np.where(cross, f / np.where(cross, f - fq, 1.0), 0.0)
    inter = poly + t[:, None] * (nxt - poly)
    both = np.stack([poly, inter], axis=1).reshape(-1, 2)
    mask = np.stack([keep, cross], axis=1).reshape(-1)
    return both[mask]


def _recession_ray(hs: HalfspaceSet) -> tuple[float, float] | None:
    # Extreme rays of {r >= 0, c.r <= 0} are the axes or boundary lines c.r = 0.
    candidates = [(1.0, 0.0), (0.0, 1.0)]
    for c1, c2, _ in hs:
        for r in ((c2, -c1), (-c2, c1)):
            if r[0] >= 0 and r[1] >= 0:
                n = math.hypot(*r)
                candidates.append((r[0] / n, r[1] / n))
    for r in candidates:
        if all(c1 * r[0] + c2 * r[1] <= _FEAS_TOL * math.hypot(c1, c2) for c1, c2, _ in hs):
            return r
    return None


def halfspaces_to_region(hs: HalfspaceSet) -> ConvexRegion:
    """Vertex form of ``{R >= 0} ∩ hs``; infeasible sets give the empty region."""
    scale = max([1.0] + [abs(d) / math.hypot(c1, c2) for c1, c2, d in hs])
    box = 4.0 * scale
    ray = _recession_ray(hs)
    while True:
        poly = np.array([[0.0, 0.0], [box, 0.0], [box, box], [0.0, box]])
        for c1, c2, d in hs:
            poly = _clip(poly, c1, c2, d)
            if len(poly) == 0:
                return ConvexRegion.empty()
        touches = bool(np.any(poly >= box * (1 - 1e-12)))
        if not touches:
            return convex_hull(poly)
        if ray is not None:
            raise Unbounded(f"feasible set is unbounded along direction {ray}")
        box *= 16.0


def intersect_regions(a: ConvexRegion, b: ConvexRegion) -> ConvexRegion:
    """Canonical polygon of the intersection of two down-closed regions."""
    if a.is_empty or b.is_empty:
        return ConvexRegion.empty()
    pa, pb = down_closure(a), down_closure(b)
    # Down-closed polygons always hold the origin; degenerate ones are clipped
    # by bounding their axis extents directly.
    if len(pb) < 3:
        xmax = max(v.x for v in pb.vertices)
        ymax = max(v.y for v in pb.vertices)
        cons = [(1.0, 0.0, xmax), (0.0, 1.0, ymax)]
    else:
        cons = _edges_as_halfspaces(pb)
    if len(pa) < 3:
        pts = list(pa.vertices)
        # Segment or point on an axis: clip as a thin polygon along its extent.
        poly = pts if len(pts) == 1 else [pts[0], pts[1]]
        for c in cons:
            poly = _clip_segment(poly, *c)
            if not poly:
                return ConvexRegion.empty()
        return convex_hull(poly)
    poly = np.array(pa.vertices, dtype=float)
    for c in cons:
        poly = _clip(poly, *c)
        if len(poly) == 0:
            return ConvexRegion.empty()
    return convex_hull(poly)


def _clip_segment(pts: list[Point2], c1: float, c2: float, d: float) -> list[Point2]:
    if len(pts) == 1:
        p = pts[0]
        return pts if c1 * p.x + c2 * p.y <= d + _FEAS_TOL * math.hypot(c1, c2) else []
    p, q = pts
    norm = math.hypot(c1, c2)
    fp = (c1 * p.x + c2 * p.y - d) / norm
    fq = (c1 * q.x + c2 * q.y - d) / norm
    if fp <= _FEAS_TOL and fq <= _FEAS_TOL:
        return pts
    if fp > _FEAS_TOL and fq > _FEAS_TOL:
        return []
    t = fp / (fp - fq)
    m = Point2(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y))
    return [p, m] if fp <= _FEAS_TOL else [m, q]


def _seg_dist(p, a, b) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    L2 = dx * dx + dy * dy
    t = 0.0 if L2 == 0 else max(0.0, min(1.0, ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / L2))
    return math.hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy)


def _polyline_dist(p, vs: np.ndarray, closed: bool) -> float:
    if len(vs) == 1:
        return float(math.hypot(p[0] - vs[0, 0], p[1] - vs[0, 1]))
    a = vs if closed and len(vs) > 2 else vs[:-1]
    b = np.roll(vs, -1, axis=0)[: len(a)]
    d = b - a
    L2 = np.einsum("ij,ij->i", d, d)
    w = np.asarray(p, dtype=float) - a
    t = np.clip(np.einsum("ij,ij->i", w, d) / np.where(L2 > 0, L2, 1.0), 0.0, 1.0)
    r = w - t[:, None] * d
    return float(np.sqrt(np.min(np.einsum("ij,ij->i", r, r))))


@lru_cache(maxsize=64)
def _closed_array(region: ConvexRegion) -> np.ndarray:
    return np.array(down_closure(region).vertices, dtype=float).reshape(-1, 2)


def distance(region: ConvexRegion, p: Sequence[float]) -> float:
    """Euclidean distance from ``p`` to the down-closed region (0 inside)."""
    if region.is_empty:
        return math.inf
    vs = _closed_array(region)
    if len(vs) >= 3:
        e = np.roll(vs, -1, axis=0) - vs
        w = np.asarray(p, dtype=float) - vs
        if np.all(e[:, 0] * w[:, 1] - e[:, 1] * w[:, 0] >= 0):
            return 0.0
    return _polyline_dist(p, vs, closed=True)


def contains(region: ConvexRegion, p: Sequence[float], tol: float = TOL) -> bool:
    return distance(region, p) <= tol


def is_subset(inner: ConvexRegion, outer: ConvexRegion, tol: float = TOL) -> bool:
    """Down-closed containment, checked on the vertices of ``inner``."""
    return all(contains(outer, v, tol) for v in inner.vertices)


def pareto_frontier(region: ConvexRegion, tol: float = TOL) -> list[Point2]:
    """Maximal vertices, sorted by increasing R1 (and hence decreasing R2)."""
    vs = region.vertices
    front = []
    for v in vs:
        dominated = any(
            w.x >= v.x - tol and w.y >= v.y - tol and (w.x > v.x + tol or w.y > v.y + tol)
            for w in vs
        )
        if not dominated:
            front.append(v)
    return sorted(_dedup(front, tol))


def frontier_distance(region: ConvexRegion, p: Sequence[float]) -> float:
    """Distance from ``p`` to the Pareto frontier polyline of ``region``."""
    front = pareto_frontier(region)
    if not front:
        return math.inf
    return _polyline_dist(p, np.array(front, dtype=float), closed=False)


def boundary_distance(region: ConvexRegion, p: Sequence[float]) -> float:
    """Distance from ``p`` to the boundary of the down-closed polygon."""
    if region.is_empty:
        return math.inf
    return _polyline_dist(p, _closed_array(region), closed=True)


def support(region: ConvexRegion, w1: float, w2: float) -> float:
    """max of w1*R1 + w2*R2 over the region's vertices."""
    return max(w1 * v.x + w2 * v.y for v in region.vertices)


def regions_close(a: ConvexRegion, b: ConvexRegion, tol: float = TOL) -> bool:
    """Vertexwise equality of canonical vertex lists within ``tol``."""
    if len(a) != len(b):
        return False
    return all(
        abs(u.x - v.x) <= tol and abs(u.y - v.y) <= tol for u, v in zip(a.vertices, b.vertices)
    )
