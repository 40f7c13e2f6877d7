"""Reproducible sampling of planar Brownian loops and bridges.

Loops are represented on a uniform time grid; the closing point is implicit
(point n coincides with point 0). All randomness flows through RngStream so a
(seed, stream_id) pair reproduces paths bit for bit.
"""

from __future__ import annotations

import csv
import math
import struct
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid on [0, T] with n steps; indices are taken modulo n."""

    T: float
    n: int

    def __post_init__(self):
        if self.T <= 0:
            raise ValueError("total time T must be positive")
        if self.n < 2:
            raise ValueError("need at least 2 time steps")

    @property
    def dt(self) -> float:
        return self.T / self.n

    def times(self) -> np.ndarray:
        return np.arange(self.n) * self.dt


@dataclass(frozen=True)
class RngStream:
    """Counter-based random stream: Philox keyed by (seed, stream_id).

    Identical (seed, stream_id) pairs reproduce identical draws; distinct
    stream_ids give statistically independent streams.
    """

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed & 0xFFFFFFFFFFFFFFFF,
                        self.stream_id & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def substream(self, offset: int) -> "RngStream":
        return RngStream(self.seed, self.stream_id + offset)


@dataclass(frozen=True)
class LoopPath:
    """Closed discretized planar loop; points[k] is the value at time k*dt.

    Loops built by sample_loop start at the origin exactly. The closing point
    is implicit: the value at time T equals points[0] with no floating error.
    """

    grid: TimeGrid
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.shape != (self.grid.n, 2):
            raise ValueError(f"expected {self.grid.n} x 2 points, got {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("loop points must be finite")
        object.__setattr__(self, "points", pts)


def sample_loop(grid: TimeGrid, rng: RngStream) -> LoopPath:
    """Planar Brownian loop: free walk minus its linear endpoint drift.

    Per-coordinate variance at time t_k is t_k (T - t_k) / T.
    """
    g = rng.generator()
    inc = g.normal(0.0, math.sqrt(grid.dt), size=(grid.n, 2))
    w = np.empty((grid.n, 2))
    w[0] = 0.0
    np.cumsum(inc[:-1], axis=0, out=w[1:])
    total = w[-1] + inc[-1]
    frac = (np.arange(grid.n) / grid.n)[:, None]
    pts = w - frac * total
    pts[0] = 0.0
    return LoopPath(grid=grid, points=pts)


def sample_bridge(p, q, duration: float, steps: int, rng: RngStream) -> np.ndarray:
    """Planar Brownian bridge from p to q: steps+1 points, exact endpoints."""
    if duration <= 0:
        raise ValueError("bridge duration must be positive")
    if steps < 1:
        raise ValueError("bridge needs at least 1 step")
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    g = rng.generator()
    out = _bridge_from_increments(
        p, q, g.normal(0.0, math.sqrt(duration / steps), size=(steps, 2)))
    return out


def _bridge_from_increments(p, q, inc: np.ndarray) -> np.ndarray:
    steps = len(inc)
    w = np.empty((steps + 1, 2))
    w[0] = 0.0
    np.cumsum(inc, axis=0, out=w[1:])
    frac = (np.arange(steps + 1) / steps)[:, None]
    out = w - frac * w[-1] + p + frac * (q - p)
    out[0] = p
    out[-1] = q
    return out


def bridge_max_cdf_complement(r: float, T: float) -> float:
    """P(max of a one-dimensional Brownian bridge over [0, T] exceeds r)."""
    if r < 0:
        raise ValueError("level r must be nonnegative")
    if T <= 0:
        raise ValueError("duration T must be positive")
    return math.exp(-2.0 * r * r / T)


def chi2_pdf(x, m: int):
    """Chi-square density with m degrees of freedom, evaluated in log space."""
    if m < 1:
        raise ValueError("degrees of freedom must be >= 1")
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise ValueError("chi2_pdf needs x >= 0")
    half = 0.5 * m
    with np.errstate(divide="ignore", invalid="ignore"):
        logpdf = (half - 1.0) * np.log(arr) - 0.5 * arr - half * math.log(2.0) \
            - math.lgamma(half)
        out = np.exp(logpdf)
    if arr.ndim == 0:
        x0 = float(arr)
        if x0 == 0.0:
            return 0.5 if m == 2 else (math.inf if m == 1 else 0.0)
        return float(out)
    zero = arr == 0.0
    if np.any(zero):
        out[zero] = 0.5 if m == 2 else (math.inf if m == 1 else 0.0)
    return out


# ---------------------------------------------------------------------------
# serialization: CSV (index, x, y) and compact binary (T, n, seed header)

_BIN_HEADER = struct.Struct("<dQQ")


def save_loop_csv(loop: LoopPath, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["index", "x", "y"])
        for k, (x, y) in enumerate(loop.points):
            w.writerow([k, repr(float(x)), repr(float(y))])


def load_loop_csv(path, T: float) -> LoopPath:
    pts = []
    with open(path, newline="", encoding="utf-8") as f:
        r = csv.reader(f)
        next(r)  # header
        for row in r:
            pts.append((float(row[1]), float(row[2])))
    arr = np.asarray(pts)
    return LoopPath(grid=TimeGrid(T=T, n=len(arr)), points=arr)


def save_loop_binary(loop: LoopPath, path, seed: int = 0) -> None:
    with open(path, "wb") as f:
        f.write(_BIN_HEADER.pack(loop.grid.T, loop.grid.n, seed & 0xFFFFFFFFFFFFFFFF))
        f.write(loop.points.astype("<f8").tobytes())


def load_loop_binary(path) -> tuple[LoopPath, int]:
    with open(path, "rb") as f:
        T, n, seed = _BIN_HEADER.unpack(f.read(_BIN_HEADER.size))
        pts = np.frombuffer(f.read(), dtype="<f8").reshape(int(n), 2).copy()
    return LoopPath(grid=TimeGrid(T=T, n=int(n)), points=pts), seed
