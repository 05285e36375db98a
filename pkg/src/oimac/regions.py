"""
Rate-region polytopes: halfspace (H) and corner (V) representations.

Every region lives in the nonnegative orthant; the constraints ``R >= 0``
are implicit in both representations.  Two-dimensional regions convert
freely between the two forms; higher-dimensional regions are handled
through corner clouds and membership tests only.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ArityError, DomainError

_DEDUP_TOL = 1e-12


@dataclass(frozen=True)
class HRegion:
    """Intersection of ``coeffs @ R <= bounds`` with ``R >= 0``.

    Attributes
    ----------
    dim : int
    coeffs : ndarray, shape (m, dim)
    bounds : ndarray, shape (m,)
    labels : tuple of str
        One tag per halfspace describing where it came from.
    """

    dim: int
    coeffs: np.ndarray
    bounds: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        coeffs = np.atleast_2d(np.asarray(self.coeffs, dtype=float))
        bounds = np.asarray(self.bounds, dtype=float).ravel()
        if coeffs.shape != (bounds.size, self.dim):
            raise ArityError(f"coeffs shape {coeffs.shape} does not match {bounds.size} bounds in dim {self.dim}")
        if not np.all(np.isfinite(bounds)) or not np.all(np.isfinite(coeffs)):
            raise DomainError("halfspace data must be finite")
        labels = tuple(self.labels) if self.labels else tuple(f"h{i}" for i in range(bounds.size))
        if len(labels) != bounds.size:
            raise ArityError("labels must align with halfspaces")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "bounds", bounds)
        object.__setattr__(self, "labels", labels)

    def bound_for(self, members: Sequence[int]) -> float:
        """Bound of the halfspace whose coefficients are the indicator of ``members``."""
        target = np.zeros(self.dim)
        target[list(members)] = 1.0
        hits = np.flatnonzero(np.all(self.coeffs == target, axis=1))
        if hits.size == 0:
            raise KeyError(f"no halfspace for users {tuple(members)}")
        return float(self.bounds[hits[0]])


@dataclass(frozen=True)
class VRegion:
    """Dominated convex hull of a finite corner list."""

    dim: int
    corners: np.ndarray
    labels: tuple = ()
    est_error: np.ndarray | None = field(default=None)

    def __post_init__(self):
        corners = np.asarray(self.corners, dtype=float).reshape(-1, self.dim)
        labels = tuple(self.labels) if self.labels else tuple(f"v{i}" for i in range(corners.shape[0]))
        if len(labels) != corners.shape[0]:
            raise ArityError("labels must align with corners")
        if self.est_error is None:
            err = np.zeros(corners.shape[0])
        else:
            err = np.broadcast_to(np.asarray(self.est_error, dtype=float), (corners.shape[0],)).copy()
        object.__setattr__(self, "corners", corners)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "est_error", err)


def _subset_coeffs(dim: int) -> np.ndarray:
    """Indicator vectors of all nonempty subsets of ``range(dim)``, by increasing mask."""
    masks = np.arange(1, 1 << dim)
    return ((masks[:, None] >> np.arange(dim)) & 1).astype(float)


def subset_hregion(bounds_by_mask: dict[int, float], dim: int, label_prefix: str = "R") -> HRegion:
    """H-rep with one unit-coefficient halfspace per nonempty user subset (bit mask)."""
    coeffs = _subset_coeffs(dim)
    masks = range(1, 1 << dim)
    labels = [label_prefix + "{" + ",".join(str(k + 1) for k in range(dim) if m >> k & 1) + "}" for m in masks]
    return HRegion(dim, coeffs, [bounds_by_mask[m] for m in masks], labels)


# ---------------------------------------------------------------------------
# 2-D conversions


def _check_2d(h: HRegion):
    if h.dim != 2:
        raise ArityError("2-D operation called on a region of dimension %d" % h.dim)


def corners_from_hrep_2d(h: HRegion) -> VRegion:
    """Vertices of a 2-D H-rep, counterclockwise from the origin.

    The list starts at (0, 0), runs along the R1 axis, around the outer
    boundary and back down the R2 axis.  A slack sum constraint turns the
    pentagon into a rectangle.

    Raises
    ------
    DomainError
        If the region is unbounded.
    """
    _check_2d(h)
    a = np.vstack([h.coeffs, [[-1.0, 0.0], [0.0, -1.0]]])
    b = np.concatenate([h.bounds, [0.0, 0.0]])
    scale = max(1.0, float(np.max(np.abs(b))))
    tol = 1e-12 * scale

    # bounded iff no nonzero direction d >= 0 with A d <= 0
    for d in ((1.0, 0.0), (0.0, 1.0)):
        if np.all(h.coeffs @ np.array(d) <= 0):
            raise DomainError("region is unbounded")

    pts = []
    for i in range(a.shape[0]):
        for j in range(i + 1, a.shape[0]):
            m = a[[i, j]]
            det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
            if abs(det) < 1e-14:
                continue
            x = np.linalg.solve(m, b[[i, j]])
            if np.all(a @ x <= b + tol):
                pts.append(np.maximum(x, 0.0))
    if not pts:
        raise DomainError("empty region")
    kept = []
    for p in pts:
        if all(np.max(np.abs(p - k)) > tol for k in kept):
            kept.append(p)
    pts = np.array(kept)
    # counterclockwise about an interior point, starting from the origin
    centre = pts.mean(axis=0) + np.array([1e-9, 1e-9]) * scale
    ang = np.arctan2(pts[:, 1] - centre[1], pts[:, 0] - centre[0])
    pts = pts[np.argsort(ang, kind="stable")]
    origin = int(np.argmin(pts.sum(axis=1)))
    pts = np.roll(pts, -origin, axis=0)
    return VRegion(2, pts, tuple(f"v{i}" for i in range(len(pts))))


def hrep_from_corners_2d(v: VRegion) -> HRegion:
    """H-rep of the dominated hull of ``v``'s corners (one halfspace per frontier edge)."""
    hull = dominated_hull_2d(v.corners)
    c = hull.corners
    frontier = c[(c[:, 0] > 0) | (c[:, 1] > 0)]
    rows, bounds, labels = [], [], []
    xmax, ymax = float(c[:, 0].max()), float(c[:, 1].max())
    rows.append([1.0, 0.0]); bounds.append(xmax); labels.append("R1")
    rows.append([0.0, 1.0]); bounds.append(ymax); labels.append("R2")
    # frontier runs from (xmax, y0) up to (x0, ymax)
    edge_pts = frontier[np.lexsort((frontier[:, 1], -frontier[:, 0]))]
    for p, q in zip(edge_pts[:-1], edge_pts[1:]):
        if p[0] == q[0] or p[1] == q[1]:
            continue
        normal = np.array([q[1] - p[1], p[0] - q[0]])
        normal = normal / np.max(np.abs(normal))
        rows.append(list(normal)); bounds.append(float(normal @ p)); labels.append(f"edge{len(labels) - 1}")
    return HRegion(2, np.array(rows), np.array(bounds), tuple(labels))


def dominated_hull_2d(points) -> VRegion:
    """Corner list of the downward-closed convex hull of nonnegative points.

    Returns the origin, the axis corners and the Pareto frontier vertices,
    counterclockwise from the origin.  Points strictly inside, dominated, or
    collinear with a frontier edge are dropped.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if pts.size == 0:
        return VRegion(2, np.zeros((1, 2)), ("origin",))
    if np.any(pts < -_DEDUP_TOL):
        raise DomainError("dominated_hull_2d needs nonnegative points")
    pts = np.maximum(pts, 0.0)
    # coordinates within round-off of an axis sit on it
    pts[pts <= 1e-12 * max(1.0, float(pts.max()))] = 0.0
    xmax, ymax = pts[:, 0].max(), pts[:, 1].max()
    cloud = np.vstack([pts, [[0.0, 0.0], [xmax, 0.0], [0.0, ymax]]])
    cloud = np.unique(cloud, axis=0)
    if cloud.shape[0] == 1:
        return VRegion(2, cloud, ("v0",))

    # Andrew's monotone chain, keeping only strict left turns; the turn test
    # is on the sine of the angle so short edges survive
    def left_turn(o, a, b):
        u, v = a - o, b - o
        cross = u[0] * v[1] - u[1] * v[0]
        return cross > 1e-12 * math.hypot(*u) * math.hypot(*v)

    lower, upper = [], []
    for p in cloud:
        while len(lower) >= 2 and not left_turn(lower[-2], lower[-1], p):
            lower.pop()
        lower.append(p)
    for p in cloud[::-1]:
        while len(upper) >= 2 and not left_turn(upper[-2], upper[-1], p):
            upper.pop()
        upper.append(p)
    hull = np.array(lower[:-1] + upper[:-1])
    # rotate so the list starts at the origin
    start = int(np.flatnonzero(np.all(np.abs(hull) <= _DEDUP_TOL, axis=1))[0])
    hull = np.roll(hull, -start, axis=0)
    return VRegion(2, hull, tuple(f"v{i}" for i in range(len(hull))))


# ---------------------------------------------------------------------------
# membership


def _violations(h: HRegion, x: np.ndarray) -> np.ndarray:
    return np.concatenate([h.coeffs @ x - h.bounds, -x])


def point_in_hrep(h: HRegion, x, slack: float = 0.0) -> bool:
    """True when every halfspace and every ``R_k >= 0`` holds within ``slack``."""
    x = np.asarray(x, dtype=float).ravel()
    if x.size != h.dim:
        raise ArityError(f"rate tuple of length {x.size} in a {h.dim}-user region")
    return bool(np.all(_violations(h, x) <= slack))


def vrep_in_hrep(v: VRegion, h: HRegion, slack: float = 0.0) -> tuple[bool, float]:
    """Whether every corner of ``v`` satisfies ``h`` within ``slack``.

    Returns ``(inside, worst_violation)`` where ``worst_violation`` is the
    largest constraint excess over all corners (negative when strictly
    inside).  Testing corners suffices because ``h`` is convex.
    """
    if v.dim != h.dim:
        raise ArityError(f"{v.dim}-D corners against a {h.dim}-D region")
    worst = -math.inf
    for c in v.corners:
        worst = max(worst, float(np.max(_violations(h, c))))
    return worst <= slack, worst
