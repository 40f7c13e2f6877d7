"""Exact and rasterized planar geometry: hulls, enclosed regions, radii, facets."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import ndimage
from scipy.optimize import linprog

DEFAULT_MAX_CELLS = 16_777_216  # raster cell budget (4096 x 4096)


class Point2(NamedTuple):
    x: float
    y: float


class Segment(NamedTuple):
    a: Point2
    b: Point2


class Disk(NamedTuple):
    center: Point2
    radius: float


class DegenerateHullError(ValueError):
    """All input points lie within tolerance of one line."""

    def __init__(self, message, extreme_pair=None):
        super().__init__(message)
        self.extreme_pair = extreme_pair


class RasterBudgetError(RuntimeError):
    """Requested raster grid exceeds the configured cell budget."""


class EmptyRegionError(ValueError):
    """Raster region has no occupied cells."""


class InconsistentHullError(ValueError):
    """Hull does not contain the loop it is claimed to bound."""


def _points(obj) -> np.ndarray:
    """Accept a LoopPath-like object or a plain (n, 2) array of points."""
    pts = getattr(obj, "points", obj)
    arr = np.asarray(pts, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError(f"expected (n, 2) points, got shape {arr.shape}")
    return arr


def signed_area(loop) -> float:
    """Shoelace area of a closed point list, positive for counterclockwise."""
    pts = _points(loop)
    if len(pts) < 3:
        raise ValueError("signed_area needs at least 3 points")
    x, y = pts[:, 0], pts[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    return 0.5 * float(np.sum(x * yn - xn * y))


def dist_point_segment(p, s) -> float:
    """Euclidean distance from point p to the closed segment s."""
    if isinstance(s, Segment):
        a, b = np.asarray(s.a, float), np.asarray(s.b, float)
    else:
        a, b = np.asarray(s[0], float), np.asarray(s[1], float)
    p = np.asarray(p, float)
    d = b - a
    dd = float(d @ d)
    if dd == 0.0:
        return float(np.hypot(*(p - a)))
    t = float(np.clip((p - a) @ d / dd, 0.0, 1.0))
    proj = a + t * d
    return float(np.hypot(*(p - proj)))


def points_segment_distance(pts: np.ndarray, a, b) -> np.ndarray:
    """Vectorized distance from many points to one closed segment."""
    pts = np.asarray(pts, float)
    a = np.asarray(a, float)
    b = np.asarray(b, float)
    d = b - a
    dd = float(d @ d)
    if dd == 0.0:
        return np.hypot(pts[:, 0] - a[0], pts[:, 1] - a[1])
    t = np.clip((pts - a) @ d / dd, 0.0, 1.0)
    proj = a + t[:, None] * d
    return np.hypot(pts[:, 0] - proj[:, 0], pts[:, 1] - proj[:, 1])


class ConvexPolygon:
    """Counterclockwise convex polygon with strict turns above a tolerance."""

    def __init__(self, vertices, collinearity_tol: float = 1e-9):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or len(v) < 3:
            raise ValueError("ConvexPolygon needs >= 3 planar vertices")
        if not np.all(np.isfinite(v)):
            raise ValueError("ConvexPolygon vertices must be finite")
        e = np.roll(v, -1, axis=0) - v
        cross = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
        dot = np.sum(e * np.roll(e, -1, axis=0), axis=1)
        turn = np.arctan2(cross, dot)
        if np.any(turn <= collinearity_tol) or np.any(turn >= np.pi):
            raise ValueError("vertices are not strictly convex in CCW order")
        self.vertices = v
        self.collinearity_tol = float(collinearity_tol)

    def __len__(self):
        return len(self.vertices)

    @property
    def area(self) -> float:
        return signed_area(self.vertices)

    @property
    def arclength(self) -> float:
        e = np.roll(self.vertices, -1, axis=0) - self.vertices
        return float(np.sum(np.hypot(e[:, 0], e[:, 1])))

    def edge_lengths(self) -> np.ndarray:
        e = np.roll(self.vertices, -1, axis=0) - self.vertices
        return np.hypot(e[:, 0], e[:, 1])

    def turn_angles(self) -> np.ndarray:
        """Exterior turn angle at the head vertex of each edge, in (0, pi)."""
        e = np.roll(self.vertices, -1, axis=0) - self.vertices
        en = np.roll(e, -1, axis=0)
        return np.arctan2(e[:, 0] * en[:, 1] - e[:, 1] * en[:, 0], np.sum(e * en, axis=1))

    def signed_edge_distances(self, pts) -> np.ndarray:
        """(N, m) signed distances to edge lines; >= 0 everywhere means inside."""
        pts = np.atleast_2d(np.asarray(pts, float))
        v = self.vertices
        e = np.roll(v, -1, axis=0) - v
        nrm = np.stack([-e[:, 1], e[:, 0]], axis=1)
        nrm /= np.hypot(e[:, 0], e[:, 1])[:, None]
        return np.einsum("nmk,mk->nm", pts[:, None, :] - v[None, :, :], nrm)

    def contains(self, pts, slack: float = 0.0) -> np.ndarray:
        return np.all(self.signed_edge_distances(pts) >= -slack, axis=1)

    def boundary_distance(self, pts) -> np.ndarray:
        """Distance from each point to the polygon boundary polyline."""
        pts = np.atleast_2d(np.asarray(pts, float))
        v = self.vertices
        w = np.roll(v, -1, axis=0)
        best = np.full(len(pts), np.inf)
        for a, b in zip(v, w):
            np.minimum(best, points_segment_distance(pts, a, b), out=best)
        return best


def convex_hull(points, collinearity_tol: float = 1e-9) -> ConvexPolygon:
    """Monotone-chain convex hull in CCW order, near-collinear vertices merged.

    Raises DegenerateHullError (carrying the extreme pair) when all points lie
    within the collinearity tolerance of one line.
    """
    pts = _points(points)
    if len(pts) < 3:
        raise ValueError("convex_hull needs at least 3 points")
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    p = pts[order]
    keep = np.ones(len(p), dtype=bool)
    keep[1:] = np.any(np.diff(p, axis=0) != 0.0, axis=1)
    p = p[keep]
    extreme = (Point2(*p[0]), Point2(*p[-1]))
    if len(p) < 3:
        raise DegenerateHullError("fewer than 3 distinct points", extreme)

    def chain(seq):
        out = []
        for q in seq:
            while len(out) > 1:
                ux, uy = out[-2]
                vx, vy = out[-1]
                if (vx - ux) * (q[1] - uy) - (q[0] - ux) * (vy - uy) <= 0.0:
                    out.pop()
                else:
                    break
            out.append((q[0], q[1]))
        return out

    lower = chain(p)
    upper = chain(p[::-1])
    hull = np.asarray(lower[:-1] + upper[:-1], dtype=float)
    if len(hull) < 3:
        raise DegenerateHullError("all points collinear within tolerance", extreme)

    # merge any surviving turns at or below the angular tolerance
    while len(hull) >= 3:
        e = np.roll(hull, -1, axis=0) - hull
        en = np.roll(e, -1, axis=0)
        turn = np.arctan2(e[:, 0] * en[:, 1] - e[:, 1] * en[:, 0], np.sum(e * en, axis=1))
        flat = turn <= collinearity_tol  # turn at vertex hull[i+1]
        if not np.any(flat):
            break
        drop = (np.flatnonzero(flat)[0] + 1) % len(hull)
        hull = np.delete(hull, drop, axis=0)
    if len(hull) < 3:
        raise DegenerateHullError("all points collinear within tolerance", extreme)
    return ConvexPolygon(hull, collinearity_tol)


def hull_arclength(hull: ConvexPolygon) -> float:
    return hull.arclength


def longest_facet(hull: ConvexPolygon, merge_tol: float = 1e-6) -> float:
    """Longest maximal straight run in the hull boundary.

    Adjacent edges whose shared turn angle is below merge_tol count as one
    facet; the facet length is the chord between the run's endpoints.
    """
    v = hull.vertices
    m = len(v)
    turn = hull.turn_angles()  # turn[i] is the angle at vertex v[(i+1) % m]
    corners = np.flatnonzero(turn >= merge_tol) + 1
    if len(corners) == 0:
        d = v[:, None, :] - v[None, :, :]
        return float(np.max(np.hypot(d[..., 0], d[..., 1])))
    corners = corners % m
    corners.sort()
    best = 0.0
    for k in range(len(corners)):
        a = v[corners[k]]
        b = v[corners[(k + 1) % len(corners)]]
        best = max(best, float(np.hypot(*(b - a))))
    return best


def max_local_roughness(loop, hull: ConvexPolygon, slack: float = 1e-9) -> float:
    """Greatest distance from a loop vertex to the hull boundary."""
    pts = _points(loop)
    sd = hull.signed_edge_distances(pts)
    worst = float(np.min(sd))
    if worst < -slack:
        raise InconsistentHullError(
            f"loop vertex lies {-worst:.3g} outside the hull (slack {slack:.1g})")
    return float(np.max(hull.boundary_distance(pts)))


def outradius(points) -> Disk:
    """Smallest enclosing circle of the points (move-to-front incremental)."""
    pts = _points(points)
    if len(pts) == 0:
        raise ValueError("outradius needs at least 1 point")
    if not np.all(np.isfinite(pts)):
        raise ValueError("outradius needs finite points")
    seq = [tuple(p) for p in pts]
    random.Random(0x6D3C).shuffle(seq)  # fixed seed: output is deterministic
    c = (seq[0][0], seq[0][1], 0.0)
    for i in range(1, len(seq)):
        if not _in_circle(c, seq[i]):
            c = _mec_one_boundary(seq[: i + 1], seq[i])
    return Disk(Point2(c[0], c[1]), c[2])


_MEC_EPS = 1e-12


def _in_circle(c, p) -> bool:
    return np.hypot(p[0] - c[0], p[1] - c[1]) <= c[2] * (1.0 + _MEC_EPS) + 1e-300


def _mec_one_boundary(pts, p):
    c = (p[0], p[1], 0.0)
    for i, q in enumerate(pts):
        if not _in_circle(c, q):
            c = _diameter(p, q) if c[2] == 0.0 else _mec_two_boundary(pts[: i + 1], p, q)
    return c


def _mec_two_boundary(pts, p, q):
    circ = _diameter(p, q)
    left = right = None
    px, py = p
    qx, qy = q
    for r in pts:
        if _in_circle(circ, r):
            continue
        cross = (qx - px) * (r[1] - py) - (qy - py) * (r[0] - px)
        c = _circumcircle(p, q, r)
        if c is None:
            continue
        ccross = (qx - px) * (c[1] - py) - (qy - py) * (c[0] - px)
        if cross > 0.0 and (left is None or ccross > (qx - px) * (left[1] - py) - (qy - py) * (left[0] - px)):
            left = c
        elif cross < 0.0 and (right is None or ccross < (qx - px) * (right[1] - py) - (qy - py) * (right[0] - px)):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right
    if right is None:
        return left
    return left if left[2] <= right[2] else right


def _diameter(a, b):
    cx, cy = (a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0
    r = max(np.hypot(a[0] - cx, a[1] - cy), np.hypot(b[0] - cx, b[1] - cy))
    return (cx, cy, r)


def _circumcircle(a, b, c):
    ox = (min(a[0], b[0], c[0]) + max(a[0], b[0], c[0])) / 2.0
    oy = (min(a[1], b[1], c[1]) + max(a[1], b[1], c[1])) / 2.0
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0
    if d == 0.0:
        return None
    x = ox + ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay)
              + (cx * cx + cy * cy) * (ay - by)) / d
    y = oy + ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx)
              + (cx * cx + cy * cy) * (bx - ax)) / d
    r = max(np.hypot(a[0] - x, a[1] - y), np.hypot(b[0] - x, b[1] - y),
            np.hypot(c[0] - x, c[1] - y))
    return (x, y, r)


def chebyshev_inradius_convex(hull: ConvexPolygon) -> Disk:
    """Largest inscribed disk of a convex polygon via a linear program.

    Maximizes r subject to n_e . c + r <= n_e . a_e over the edge half-planes;
    exact for convex input up to LP solver tolerance.
    """
    v = hull.vertices
    e = np.roll(v, -1, axis=0) - v
    nrm = np.stack([-e[:, 1], e[:, 0]], axis=1)
    nrm /= np.hypot(e[:, 0], e[:, 1])[:, None]
    # inward unit normals: interior satisfies nrm . (p - a) >= 0
    A = np.column_stack([-nrm, np.ones(len(v))])
    b = -np.einsum("ij,ij->i", nrm, v)
    res = linprog(c=[0.0, 0.0, -1.0], A_ub=A, b_ub=b,
                  bounds=[(None, None), (None, None), (0, None)], method="highs")
    if not res.success:
        raise ValueError(f"inscribed-disk LP failed: {res.message}")
    cx, cy, r = res.x
    return Disk(Point2(float(cx), float(cy)), float(r))


@dataclass(frozen=True)
class RasterRegion:
    """Rasterized enclosed set: occupancy grid plus cell geometry.

    grid[iy, ix] covers [origin.x + ix*h, origin.x + (ix+1)*h) x
    [origin.y + iy*h, ...). Occupied cells are the flood-fill complement of
    the unbounded component; curve cells are included.
    """

    origin: Point2
    h: float
    grid: np.ndarray
    cell_count: int

    @property
    def area(self) -> float:
        return self.cell_count * self.h * self.h

    def cell_centers(self) -> np.ndarray:
        iy, ix = np.nonzero(self.grid)
        return np.column_stack([self.origin.x + (ix + 0.5) * self.h,
                                self.origin.y + (iy + 0.5) * self.h])

    def distance_interior(self) -> np.ndarray:
        """Exact Euclidean distance (plane units) from each occupied cell to
        the nearest unoccupied cell; zero outside the region."""
        return ndimage.distance_transform_edt(self.grid, sampling=self.h)

    def header(self) -> dict:
        ny, nx = self.grid.shape
        return {"origin": [self.origin.x, self.origin.y], "h": self.h,
                "dims": [ny, nx], "cell_count": int(self.cell_count)}

    def to_pgm_bytes(self) -> bytes:
        ny, nx = self.grid.shape
        img = np.where(self.grid[::-1, :], 255, 0).astype(np.uint8)  # row 0 at top
        return f"P5\n{nx} {ny}\n255\n".encode("ascii") + img.tobytes()

    def save(self, path_stem) -> None:
        stem = str(path_stem)
        with open(stem + ".pgm", "wb") as f:
            f.write(self.to_pgm_bytes())
        with open(stem + ".json", "w", encoding="utf-8") as f:
            json.dump(self.header(), f)
            f.write("\n")


def _supercover_mask(pts: np.ndarray, origin, h: float, shape) -> np.ndarray:
    """Boolean grid marking every cell the closed polyline through pts touches.

    Cells are found by enumerating all horizontal and vertical grid-line
    crossings of each segment (both adjacent cells marked per crossing) plus
    the endpoint cells, so the marked set is 8-connected along the curve and
    a 4-connected flood cannot leak through it.
    """
    ny, nx = shape
    u0 = (pts - origin) / h
    u1 = np.roll(u0, -1, axis=0)
    cols = [np.floor(u0).astype(np.int64), np.floor(u1).astype(np.int64)]
    for ax in (0, 1):
        lo = np.minimum(u0[:, ax], u1[:, ax])
        hi = np.maximum(u0[:, ax], u1[:, ax])
        first = np.floor(lo).astype(np.int64) + 1
        count = np.maximum(np.ceil(hi).astype(np.int64) - first, 0)
        total = int(count.sum())
        if total == 0:
            continue
        seg = np.repeat(np.arange(len(count)), count)
        offs = np.concatenate(([0], np.cumsum(count)[:-1]))
        rank = np.arange(total) - np.repeat(offs, count)
        line = first[seg] + rank
        d = u1[seg] - u0[seg]
        t = (line - u0[seg, ax]) / d[:, ax]
        other = np.floor(u0[seg, 1 - ax] + t * d[:, 1 - ax]).astype(np.int64)
        c = np.empty((2 * total, 2), dtype=np.int64)
        c[:total, ax] = line - 1
        c[total:, ax] = line
        c[:total, 1 - ax] = other
        c[total:, 1 - ax] = other
        cols.append(c)
    cells = np.concatenate(cols, axis=0)
    np.clip(cells[:, 0], 0, nx - 1, out=cells[:, 0])
    np.clip(cells[:, 1], 0, ny - 1, out=cells[:, 1])
    mask = np.zeros(shape, dtype=bool)
    mask[cells[:, 1], cells[:, 0]] = True
    return mask


_FOUR_CONN = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


def enclosed_region(loop, h: float, max_cells: int = DEFAULT_MAX_CELLS) -> RasterRegion:
    """Raster of the set enclosed by the loop: everything not 4-connected to
    the padded border once the curve's supercover cells are blocked.
    """
    if h <= 0:
        raise ValueError("cell size h must be positive")
    pts = _points(loop)
    if len(pts) < 3:
        raise ValueError("enclosed_region needs a closed loop of >= 3 points")
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    origin = Point2(float(lo[0] - 2 * h), float(lo[1] - 2 * h))
    nx = int(np.ceil((hi[0] - lo[0]) / h)) + 5
    ny = int(np.ceil((hi[1] - lo[1]) / h)) + 5
    if nx * ny > max_cells:
        raise RasterBudgetError(
            f"raster would need {nx * ny} cells (budget {max_cells}); "
            "increase h or the budget")
    mask = _supercover_mask(pts, np.asarray(origin), h, (ny, nx))
    labels, _ = ndimage.label(~mask, structure=_FOUR_CONN)
    outside = labels[0, 0]
    grid = labels != outside
    return RasterRegion(origin=origin, h=h, grid=grid,
                        cell_count=int(np.count_nonzero(grid)))


def inradius(region: RasterRegion) -> Disk:
    """Largest-distance cell of the region's Euclidean distance transform.

    Under-approximates the true inradius by at most h * sqrt(2).
    """
    if region.cell_count == 0:
        raise EmptyRegionError("region has no occupied cells")
    dist = region.distance_interior()
    iy, ix = np.unravel_index(np.argmax(dist), dist.shape)
    center = Point2(region.origin.x + (ix + 0.5) * region.h,
                    region.origin.y + (iy + 0.5) * region.h)
    return Disk(center, float(dist[iy, ix]))
