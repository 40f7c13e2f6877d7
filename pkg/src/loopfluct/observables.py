"""Polygonal approximation machinery, per-sample measurements, scaling fits."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .geometry import (Point2, Segment, convex_hull, enclosed_region, inradius,
                       longest_facet, max_local_roughness, outradius,
                       points_segment_distance)
from .sampler import LoopPath, RngStream


class Stadium(NamedTuple):
    """All points within distance radius of the core segment."""

    segment: Segment
    radius: float


@dataclass(frozen=True)
class PolygonalApprox:
    """Inscribed m-gon at times j*T/m + t_prime with its window fluctuations.

    L[i] is the edge length from vertex i-1 to vertex i (cyclic); R[i] is the
    greatest distance of the window's grid points from that edge's segment;
    R_hat[i] the greatest displacement from the constant-speed traversal of
    the edge. R[i] <= R_hat[i] always.
    """

    m: int
    t_prime: float
    vertices: np.ndarray
    L: np.ndarray
    segments: list
    R: np.ndarray
    R_hat: np.ndarray
    Q: list


def polygonal_approx(loop: LoopPath, m: int, t_prime: float = 0.0) -> PolygonalApprox:
    n = loop.grid.n
    if not 3 <= m <= n:
        raise ValueError(f"need 3 <= m <= n, got m={m}, n={n}")
    T, dt = loop.grid.T, loop.grid.dt
    if not 0.0 <= t_prime <= T / m + 1e-12:
        raise ValueError("t_prime must lie in [0, T/m]")
    pts = loop.points
    vertex_idx = np.round((np.arange(m) * (n / m)) + t_prime / dt).astype(int) % n
    t_snapped = (round(t_prime / dt) % n) * dt
    verts = pts[vertex_idx]
    segments = []
    L = np.empty(m)
    R = np.empty(m)
    R_hat = np.empty(m)
    for i in range(m):
        a_idx = vertex_idx[i - 1]
        b_idx = vertex_idx[i]
        a, b = pts[a_idx], pts[b_idx]
        L[i] = float(np.hypot(*(b - a)))
        segments.append(Segment(Point2(*a), Point2(*b)))
        w = (b_idx - a_idx) % n
        if w == 0:
            w = n
        win = pts[(a_idx + np.arange(w + 1)) % n]
        R[i] = float(np.max(points_segment_distance(win, a, b)))
        frac = (np.arange(w + 1) / w)[:, None]
        lin = a + frac * (b - a)
        R_hat[i] = float(np.max(np.hypot(win[:, 0] - lin[:, 0], win[:, 1] - lin[:, 1])))
    Q = [Stadium(seg, float(r)) for seg, r in zip(segments, R)]
    return PolygonalApprox(m=m, t_prime=t_snapped, vertices=verts, L=L,
                           segments=segments, R=R, R_hat=R_hat, Q=Q)


def normalized_increments(approx: PolygonalApprox, T: float) -> np.ndarray:
    """Interleaved scaled vertex increments: entries 2i-1, 2i (1-based) are
    sqrt(m/T) times the horizontal and vertical components of the i-th edge
    vector. Both alternating sums vanish (closed loop) and the sum of squares
    recovers (m/T) * sum(L_i^2) exactly."""
    v = approx.vertices
    inc = v - np.roll(v, 1, axis=0)
    return (math.sqrt(approx.m / T) * inc).reshape(-1)


@dataclass(frozen=True)
class ObservableRecord:
    T: float
    n: int
    h: float
    seed: int
    stream_id: int
    sweep: int
    area: float
    area_excess: float
    r_in: float
    r_out: float
    ann_width: float
    mlr: float
    longest_facet: float
    hull_arclength: float

    CSV_COLUMNS = ("T", "n", "h", "seed", "stream_id", "sweep", "area",
                   "area_excess", "r_in", "r_out", "ann_width", "mlr",
                   "longest_facet", "hull_arclength")

    def csv_row(self) -> list:
        return [getattr(self, c) for c in self.CSV_COLUMNS]


def measure(loop: LoopPath, h: float, seed: int = 0, stream_id: int = 0,
            sweep: int = 0, max_cells: int | None = None) -> ObservableRecord:
    """Compose the geometry module over one loop into a measurement record."""
    kwargs = {} if max_cells is None else {"max_cells": max_cells}
    region = enclosed_region(loop, h, **kwargs)
    r_in = inradius(region).radius
    r_out = outradius(loop.points).radius
    hull = convex_hull(loop.points)
    T = loop.grid.T
    area = region.area
    return ObservableRecord(
        T=T, n=loop.grid.n, h=h, seed=seed, stream_id=stream_id, sweep=sweep,
        area=area, area_excess=area - math.pi * T * T,
        r_in=r_in, r_out=r_out, ann_width=r_out - r_in,
        mlr=max_local_roughness(loop, hull),
        longest_facet=longest_facet(hull),
        hull_arclength=hull.arclength)


def save_records_csv(records, path) -> None:
    rows = sorted(records, key=lambda r: (r.T, r.stream_id, r.sweep))
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(ObservableRecord.CSV_COLUMNS)
        for r in rows:
            w.writerow(r.csv_row())


def load_records_csv(path) -> list[ObservableRecord]:
    out = []
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        for row in reader:
            out.append(ObservableRecord(
                T=float(row["T"]), n=int(row["n"]), h=float(row["h"]),
                seed=int(row["seed"]), stream_id=int(row["stream_id"]),
                sweep=int(row["sweep"]), area=float(row["area"]),
                area_excess=float(row["area_excess"]), r_in=float(row["r_in"]),
                r_out=float(row["r_out"]), ann_width=float(row["ann_width"]),
                mlr=float(row["mlr"]), longest_facet=float(row["longest_facet"]),
                hull_arclength=float(row["hull_arclength"])))
    return out


@dataclass(frozen=True)
class ScalingFit:
    exponent: float
    intercept: float
    ci_low: float
    ci_high: float
    points: list  # (log T, log mean) pairs

    def to_json_dict(self) -> dict:
        return {"exponent": self.exponent, "intercept": self.intercept,
                "ci_low": self.ci_low, "ci_high": self.ci_high,
                "points": [list(p) for p in self.points]}


def _ols_slope(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    xm, ym = x.mean(), y.mean()
    slope = float(((x - xm) @ (y - ym)) / ((x - xm) @ (x - xm)))
    return slope, float(ym - slope * xm)


def scaling_fit(groups: dict, rng: RngStream | None = None,
                n_boot: int = 10_000) -> ScalingFit:
    """Power-law exponent of one observable across T.

    groups maps T to the list of per-replicate sample means. The point
    estimate is OLS of log(mean of replicate means) on log(T); the 95% CI
    comes from bootstrap resampling of replicate means within each T.
    """
    Ts = sorted(groups)
    if len(Ts) < 3:
        raise ValueError("scaling_fit needs at least 3 distinct T values")
    reps = [np.asarray(groups[t], dtype=float) for t in Ts]
    if any(len(r) == 0 for r in reps):
        raise ValueError("every T needs at least one replicate mean")
    means = np.array([r.mean() for r in reps])
    if np.any(means <= 0):
        raise ValueError("scaling_fit needs positive means (log undefined)")
    x = np.log(np.asarray(Ts, dtype=float))
    y = np.log(means)
    slope, intercept = _ols_slope(x, y)

    g = (rng or RngStream(seed=0)).generator()
    boot = np.empty((n_boot, len(Ts)))
    for k, r in enumerate(reps):
        idx = g.integers(len(r), size=(n_boot, len(r)))
        boot[:, k] = r[idx].mean(axis=1)
    if np.all(boot > 0):
        yb = np.log(boot)
        xc = x - x.mean()
        slopes = (yb - yb.mean(axis=1, keepdims=True)) @ xc / (xc @ xc)
        ci_low, ci_high = np.quantile(slopes, [0.025, 0.975])
    else:
        ci_low = ci_high = slope
    ci_low = min(float(ci_low), slope)
    ci_high = max(float(ci_high), slope)
    return ScalingFit(exponent=slope, intercept=intercept,
                      ci_low=ci_low, ci_high=ci_high,
                      points=list(zip(x.tolist(), y.tolist())))
