"""Area-conditioned loop sampler: bridge-resampling Markov chain.

A step resamples the forward arc between two uniformly chosen indices with a
fresh Brownian bridge and accepts iff the rasterized enclosed area stays at or
above the target plus a safety margin. The bridge proposal is the exact
conditional law of the arc given its endpoints, so acceptance is a pure
indicator (constrained Gibbs update), no Metropolis ratio.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .geometry import DEFAULT_MAX_CELLS, RasterRegion, enclosed_region
from .sampler import LoopPath, RngStream, TimeGrid, _bridge_from_increments


class ChainInitError(RuntimeError):
    """Initial state failed the area constraint."""


@dataclass(frozen=True)
class ChainConfig:
    T: float
    n: int
    h: float
    area_target: Optional[float] = None      # defaults to pi * T^2
    safety_margin: Optional[float] = None    # defaults to 6 * h * pi * T
    init_inflation: float = 0.05
    max_cells: int = DEFAULT_MAX_CELLS

    def __post_init__(self):
        if self.T <= 0 or self.n < 3 or self.h <= 0:
            raise ValueError("need T > 0, n >= 3, h > 0")
        if self.area_target is None:
            object.__setattr__(self, "area_target", math.pi * self.T * self.T)
        if self.safety_margin is None:
            # twice the raster area-bias bound at arclength ~ 2 pi T
            object.__setattr__(self, "safety_margin", 6.0 * self.h * math.pi * self.T)
        if self.safety_margin < 0:
            raise ValueError("safety_margin must be >= 0")

    @property
    def threshold(self) -> float:
        return self.area_target + self.safety_margin

    def to_dict(self) -> dict:
        return {"T": self.T, "n": self.n, "h": self.h,
                "area_target": self.area_target,
                "safety_margin": self.safety_margin,
                "init_inflation": self.init_inflation,
                "max_cells": self.max_cells}


@dataclass(frozen=True)
class ChainState:
    loop: LoopPath
    region: RasterRegion
    area: float
    sweep: int = 0
    accepted: int = 0
    proposed: int = 0


@dataclass(frozen=True)
class ProposalRecord:
    i: int
    j: int
    arc_len: int
    accepted: bool
    new_area: float


@dataclass
class ChainSummary:
    config: ChainConfig
    sweeps: int
    thin: int
    acceptance_rate: float
    iact_area: float
    emitted: int
    seed: int
    stream_id: int
    area_trace: np.ndarray = field(repr=False, default=None)

    def to_json_dict(self) -> dict:
        return {"config": self.config.to_dict(), "sweeps": self.sweeps,
                "acceptance_rate": self.acceptance_rate,
                "iact_area": self.iact_area,
                "seed": self.seed, "stream_id": self.stream_id}


def init_state(config: ChainConfig, rng: RngStream) -> ChainState:
    """Regular n-gon start whose exact polygon area is
    (1 + init_inflation)^2 * area_target, first vertex at the origin."""
    n = config.n
    r0 = (1.0 + config.init_inflation) * math.sqrt(
        2.0 * config.area_target / (n * math.sin(2.0 * math.pi / n)))
    theta = math.pi + 2.0 * math.pi * np.arange(n) / n
    pts = np.column_stack([r0 + r0 * np.cos(theta), r0 * np.sin(theta)])
    pts[0] = 0.0
    loop = LoopPath(grid=TimeGrid(T=config.T, n=n), points=pts)
    region = enclosed_region(pts, config.h, config.max_cells)
    if region.area < config.threshold:
        raise ChainInitError(
            f"initial raster area {region.area:.6g} is below the required "
            f"{config.threshold:.6g}; increase init_inflation (now "
            f"{config.init_inflation}) or refine h")
    return ChainState(loop=loop, region=region, area=region.area)


def _gen(rng) -> np.random.Generator:
    return rng.generator() if isinstance(rng, RngStream) else rng


def propose_step(state: ChainState, config: ChainConfig, rng) -> tuple[ChainState, ProposalRecord]:
    """One proposal: resample the forward arc i -> j, accept iff the area
    constraint still holds. Endpoints and the arc's complement never move."""
    g = _gen(rng)
    n = state.loop.grid.n
    i = int(g.integers(n))
    j = int(g.integers(n - 1))
    if j >= i:
        j += 1
    arc_len = (j - i) % n
    dt = state.loop.grid.dt
    inc = g.normal(0.0, math.sqrt(dt), size=(arc_len, 2))
    bridge = _bridge_from_increments(state.loop.points[i], state.loop.points[j], inc)
    new_pts = state.loop.points.copy()
    if arc_len > 1:
        idx = (i + np.arange(1, arc_len)) % n
        new_pts[idx] = bridge[1:arc_len]
    region = enclosed_region(new_pts, config.h, config.max_cells)
    new_area = region.area
    ok = new_area >= config.threshold
    if ok:
        new_state = replace(state,
                            loop=LoopPath(grid=state.loop.grid, points=new_pts),
                            region=region, area=new_area,
                            accepted=state.accepted + 1,
                            proposed=state.proposed + 1)
    else:
        new_state = replace(state, proposed=state.proposed + 1)
    return new_state, ProposalRecord(i=i, j=j, arc_len=arc_len,
                                     accepted=ok, new_area=new_area)


def step(state: ChainState, config: ChainConfig, rng) -> ChainState:
    return propose_step(state, config, rng)[0]


def integrated_autocorr_time(trace) -> float:
    """Initial-positive-sequence estimator of the integrated autocorrelation
    time, in units of trace samples."""
    x = np.asarray(trace, dtype=float)
    n = len(x)
    if n < 4:
        return 1.0
    xc = x - x.mean()
    var = float(xc @ xc) / n
    if var == 0.0:
        return 1.0
    acov = np.correlate(xc, xc, mode="full")[n - 1:] / n
    rho = acov / acov[0]
    tau = -1.0
    m = 0
    while 2 * m + 1 < n:
        gamma = rho[2 * m] + rho[2 * m + 1]
        if gamma <= 0.0:
            break
        tau += 2.0 * gamma
        m += 1
    return max(tau, 1.0)


def run_chain(config: ChainConfig, sweeps: int, thin: int, rng: RngStream,
              sink: Optional[Callable[[LoopPath, int, float], None]] = None) -> ChainSummary:
    """Run sweeps * n proposals; every thin-th sweep hand the current loop to
    the sink. Every emitted loop is asserted to satisfy the area constraint."""
    if sweeps < 1 or thin < 1:
        raise ValueError("need sweeps >= 1 and thin >= 1")
    state = init_state(config, rng)
    g = rng.generator()
    n = config.n
    trace = np.empty(sweeps)
    emitted = 0
    for sweep in range(1, sweeps + 1):
        for _ in range(n):
            state, _rec = propose_step(state, config, g)
        state = replace(state, sweep=sweep)
        trace[sweep - 1] = state.area
        if sweep % thin == 0:
            assert state.area >= config.threshold, "emitted state violates the area constraint"
            if sink is not None:
                sink(state.loop, sweep, state.area)
            emitted += 1
    return ChainSummary(config=config, sweeps=sweeps, thin=thin,
                        acceptance_rate=state.accepted / state.proposed,
                        iact_area=integrated_autocorr_time(trace),
                        emitted=emitted, seed=rng.seed, stream_id=rng.stream_id,
                        area_trace=trace)
