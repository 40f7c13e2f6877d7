"""Numerical verification of the closed-form laws and geometric inequalities.

Every check is deterministic given its RngStream and reports its statistic
even on pass. Monte Carlo tolerances are three binomial standard errors;
exact-geometry checks carry only documented raster slack.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .geometry import (chebyshev_inradius_convex, convex_hull, enclosed_region,
                       longest_facet, outradius, points_segment_distance,
                       signed_area)
from .observables import ObservableRecord, polygonal_approx
from .sampler import (LoopPath, RngStream, TimeGrid, bridge_max_cdf_complement,
                      chi2_pdf, sample_loop)

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    statistic: float
    threshold: float
    samples: int
    seed: int
    details: str = ""

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.passed))
        object.__setattr__(self, "statistic", float(self.statistic))
        object.__setattr__(self, "threshold", float(self.threshold))
        object.__setattr__(self, "samples", int(self.samples))
        object.__setattr__(self, "seed", int(self.seed))

    def to_json_line(self) -> str:
        return json.dumps({"name": self.name, "passed": self.passed,
                           "statistic": self.statistic, "threshold": self.threshold,
                           "samples": self.samples, "seed": self.seed,
                           "details": self.details})


def gaussian_cdf(x):
    """Standard normal CDF via erfc; vectorized."""
    return 0.5 * special.erfc(-np.asarray(x, dtype=float) / SQRT2)


def chi2_cdf(x: float, m: int) -> float:
    """Chi-square CDF by adaptive quadrature of the density (no special
    function); the m = 1 integrable singularity is removed by substitution."""
    if x <= 0:
        return 0.0
    if m == 1:
        val, _ = integrate.quad(lambda u: 2.0 * math.exp(-0.5 * u * u) / math.sqrt(2.0 * math.pi),
                                0.0, math.sqrt(x), limit=200)
        return min(val, 1.0)
    val, _ = integrate.quad(chi2_pdf, 0.0, x, args=(m,), limit=200)
    return min(val, 1.0)


def ks_distance(sample, cdf) -> float:
    """Kolmogorov-Smirnov distance of a sample against a scalar reference CDF."""
    s = np.sort(np.asarray(sample, dtype=float))
    n = len(s)
    f = np.array([cdf(v) for v in s])
    grid = np.arange(1, n + 1) / n
    return float(max(np.max(np.abs(f - grid)), np.max(np.abs(f - (grid - 1.0 / n)))))


def _loop_batch(g: np.random.Generator, count: int, n: int, T: float) -> np.ndarray:
    """(count, n, 2) array of Brownian loops; same construction as sample_loop."""
    inc = g.normal(0.0, math.sqrt(T / n), size=(count, n, 2))
    w = np.cumsum(inc, axis=1)
    frac = (np.arange(1, n + 1) / n)[None, :, None]
    b = np.empty_like(w)
    b[:, 1:, :] = w[:, :-1, :] - frac[:, :-1, :] * w[:, -1:, :]
    b[:, 0, :] = 0.0
    return b


def check_bridge_max_law(T: float, n: int, N: int, rng: RngStream,
                         batch: int = 512) -> CheckReport:
    """Empirical law of the discrete bridge maximum against exp(-2 r^2 / T).

    Tolerance 0.01 + 1.5 * sqrt(T/n) / sqrt(T) allows the O(sqrt(dt))
    discretization bias of the discrete maximum.
    """
    g = rng.generator()
    dt = T / n
    maxima = np.empty(N)
    done = 0
    frac = np.arange(1, n + 1) / n
    while done < N:
        b = min(batch, N - done)
        inc = g.normal(0.0, math.sqrt(dt), size=(b, n))
        w = np.cumsum(inc, axis=1)
        bridge = w - frac[None, :] * w[:, -1:]
        maxima[done:done + b] = np.maximum(bridge.max(axis=1), 0.0)
        done += b
    s = np.sort(maxima)
    f = 1.0 - np.exp(-2.0 * s * s / T)
    grid = np.arange(1, N + 1) / N
    ks = float(max(np.max(np.abs(f - grid)), np.max(np.abs(f - (grid - 1.0 / N)))))
    threshold = 0.01 + 1.5 * math.sqrt(T / n) / math.sqrt(T)
    r_e = math.sqrt(T / 2.0)
    emp_tail = float(np.mean(maxima > r_e))
    details = (f"P(M > sqrt(T/2)) empirical {emp_tail:.5f} vs "
               f"{bridge_max_cdf_complement(r_e, T):.5f}")
    return CheckReport(name="bridge_max", passed=ks <= threshold, statistic=ks,
                       threshold=threshold, samples=N, seed=rng.seed, details=details)


def check_sup_dominance(T: float, n: int, N: int, rng: RngStream,
                        C2: float = 128.0 * math.pi, batch: int = 512) -> CheckReport:
    """Stochastic dominance of the loop's squared sup-norm by C2*T + Z^2,
    plus the intermediate 4*exp(-r^2/T) tail bound, on a 50-threshold grid."""
    g = rng.generator()
    sup2 = np.empty(N)
    done = 0
    while done < N:
        b = min(batch, N - done)
        loops = _loop_batch(g, b, n, T)
        sup2[done:done + b] = np.max(loops[:, :, 0] ** 2 + loops[:, :, 1] ** 2, axis=1)
        done += b
    a_grid = np.linspace(0.5 * T, C2 * T + 25.0 * T, 50)
    emp = np.mean(sup2[None, :] >= a_grid[:, None], axis=1)
    excess = np.maximum(a_grid - C2 * T, 0.0)
    ana = np.where(a_grid <= C2 * T, 1.0,
                   special.erfc(np.sqrt(excess / (2.0 * T))))
    se = np.sqrt(ana * (1.0 - ana) / N)
    margin = float(np.max(emp - (ana + 3.0 * se)))
    bound20 = np.minimum(4.0 * np.exp(-a_grid / T), 1.0)
    se20 = np.sqrt(bound20 * (1.0 - bound20) / N)
    margin20 = float(np.max(emp - (bound20 + 3.0 * se20)))
    passed = margin <= 0.0 and margin20 <= 0.0
    details = f"dominance margin {margin:.3e}; eq20 margin {margin20:.3e}"
    return CheckReport(name="sup_dominance", passed=passed,
                       statistic=max(margin, margin20), threshold=0.0,
                       samples=N, seed=rng.seed, details=details)


def check_containment(loop: LoopPath, m: int, h: float, seed: int = 0) -> CheckReport:
    """Cell-wise containment of the enclosed raster in conv(P) union the
    stadium neighborhoods, with h * sqrt(2) quantization slack."""
    approx = polygonal_approx(loop, m)
    region = enclosed_region(loop, h)
    cells = region.cell_centers()
    hull = convex_hull(approx.vertices)
    inside = hull.contains(cells)
    outside = cells[~inside]
    if len(outside) == 0:
        stat = -math.inf
    else:
        deficiency = np.full(len(outside), np.inf)
        for seg, r in zip(approx.segments, approx.R):
            d = points_segment_distance(outside, seg.a, seg.b) - r
            np.minimum(deficiency, d, out=deficiency)
        stat = float(np.max(deficiency))
    threshold = h * SQRT2
    return CheckReport(name="containment", passed=stat <= threshold + 1e-12,
                       statistic=stat, threshold=threshold,
                       samples=len(cells), seed=seed,
                       details=f"m={m} h={h} cells={len(cells)}")


def check_bonnesen(hull, seed: int = 0) -> CheckReport:
    """Bonnesen inequality on a convex body, exact geometry only:
    arclength^2 >= 4 pi area + pi^2 (R_out - R_in)^2."""
    arcl = hull.arclength
    area = hull.area
    r_in = chebyshev_inradius_convex(hull).radius
    r_out = outradius(hull.vertices).radius
    lhs = arcl * arcl
    rhs = 4.0 * math.pi * area + math.pi ** 2 * (r_out - r_in) ** 2
    rel_margin = (lhs - rhs) / lhs
    return CheckReport(name="bonnesen", passed=rel_margin >= -1e-9,
                       statistic=float(rel_margin), threshold=-1e-9,
                       samples=len(hull.vertices), seed=seed,
                       details=f"arcl^2={lhs:.6g} rhs={rhs:.6g}")


def _segments_properly_intersect(p1, p2, p3, p4) -> bool:
    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    d1 = orient(p3, p4, p1)
    d2 = orient(p3, p4, p2)
    d3 = orient(p1, p2, p3)
    d4 = orient(p1, p2, p4)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0))


def polygon_is_simple(vertices: np.ndarray) -> bool:
    v = np.asarray(vertices, dtype=float)
    k = len(v)
    for i in range(k):
        a1, a2 = v[i], v[(i + 1) % k]
        for j in range(i + 1, k):
            if j == i or (j + 1) % k == i or (i + 1) % k == j:
                continue
            if _segments_properly_intersect(a1, a2, v[j], v[(j + 1) % k]):
                return False
    return True


def check_polygon_arclength(vertices, seed: int = 0) -> CheckReport:
    """Polygon arclength exceeds its hull's by (sqrt(5)-2) min(2R^2/Q, R)."""
    v = np.asarray(vertices, dtype=float)
    if len(v) < 3:
        raise ValueError("polygon needs >= 3 vertices")
    if not polygon_is_simple(v):
        raise ValueError("polygon must be simple (no self-intersection)")
    e = np.roll(v, -1, axis=0) - v
    arcl = float(np.sum(np.hypot(e[:, 0], e[:, 1])))
    hull = convex_hull(v)
    R = float(np.max(hull.boundary_distance(v)))
    Q = longest_facet(hull)
    bonus = (math.sqrt(5.0) - 2.0) * min(2.0 * R * R / Q, R)
    margin = arcl - hull.arclength - bonus
    tol = -1e-9 * max(1.0, arcl)
    return CheckReport(name="polygon_arclength", passed=margin >= tol,
                       statistic=float(margin), threshold=tol,
                       samples=len(v), seed=seed,
                       details=f"R={R:.6g} Q={Q:.6g}")


def check_facet_bound(record, hull, seed: int = 0) -> CheckReport:
    """Longest hull facet against 4 sqrt(R_in (R_out - R_in)) when
    R_in > R_out / 2; raster under-approximation of R_in propagated as
    4 sqrt(R_out * 2 sqrt(2) h) slack."""
    r_in, r_out, h = record.r_in, record.r_out, record.h
    if r_in <= 0.5 * r_out:
        return CheckReport(name="facet_bound", passed=True, statistic=0.0,
                           threshold=0.0, samples=1, seed=seed,
                           details="vacuous: r_in <= r_out / 2")
    facet = longest_facet(hull)
    bound = 4.0 * math.sqrt(r_in * (r_out - r_in))
    slack = 4.0 * math.sqrt(r_out * 2.0 * SQRT2 * h) if h > 0 else 0.0
    margin = facet - bound - slack
    tol = 1e-12 * max(1.0, bound)
    return CheckReport(name="facet_bound", passed=margin <= tol,
                       statistic=float(margin), threshold=tol, samples=1,
                       seed=seed, details=f"facet={facet:.9g} bound={bound:.9g} slack={slack:.3g}")


def rate_functional(coeffs) -> tuple[float, float]:
    """Dirichlet energy and signed area of a Fourier loop with coefficients
    a_n, n in [-N, N] (centered array)."""
    a = np.asarray(coeffs, dtype=complex)
    if a.ndim != 1 or len(a) % 2 != 1:
        raise ValueError("coeffs must be a centered odd-length array")
    N = (len(a) - 1) // 2
    modes = np.arange(-N, N + 1)
    power = np.abs(a) ** 2
    I = 2.0 * math.pi ** 2 * float(np.sum(modes ** 2 * power))
    A = math.pi * float(np.sum(modes * power))
    return I, A


def fourier_loop_points(coeffs, n_points: int) -> np.ndarray:
    a = np.asarray(coeffs, dtype=complex)
    N = (len(a) - 1) // 2
    if n_points <= 2 * N:
        raise ValueError("need more sample points than Fourier modes")
    spec = np.zeros(n_points, dtype=complex)
    modes = np.arange(-N, N + 1)
    spec[modes % n_points] = a
    z = np.fft.ifft(spec) * n_points
    return np.column_stack([z.real, z.imag])


def check_rate_functional(coeffs, rel_tol: float = 1e-6, seed: int = 0) -> CheckReport:
    """Energy-area inequality for positive-mode loops and agreement of the
    Fourier area with the discretized shoelace area.

    The sample count grows with the top mode so the inscribed-polygon area
    error (2 pi N / K)^2 / 6 stays an order below rel_tol.
    """
    a = np.asarray(coeffs, dtype=complex)
    N = (len(a) - 1) // 2
    I, A = rate_functional(a)
    K = 4096
    while N > 0 and (2.0 * math.pi * N / K) ** 2 / 6.0 > 0.1 * rel_tol:
        K *= 2
    pts = fourier_loop_points(a, K)
    shoelace = signed_area(pts)
    scale = max(abs(A), math.pi * float(np.sum(np.abs(np.arange(-N, N + 1)) * np.abs(a) ** 2)), 1e-300)
    mismatch = abs(shoelace - A) / scale
    positive_only = bool(np.all(a[:N] == 0.0))
    ineq_ok = True
    if positive_only:
        ineq_ok = I >= 2.0 * math.pi * A - 1e-12 * max(abs(I), 1.0)
    passed = mismatch <= rel_tol and ineq_ok
    details = (f"I={I:.12g} A={A:.12g} shoelace={shoelace:.12g} K={K}"
               + ("" if ineq_ok else " INEQUALITY VIOLATED"))
    return CheckReport(name="rate_functional", passed=passed,
                       statistic=float(mismatch), threshold=rel_tol,
                       samples=K, seed=seed, details=details)


def _sliding_extreme(x: np.ndarray, win: int, op) -> np.ndarray:
    """op-extreme over every length-win window along the last axis (dyadic)."""
    M = x
    p = 1
    while 2 * p <= win:
        M = op(M[..., :M.shape[-1] - p], M[..., p:])
        p *= 2
    L = x.shape[-1]
    return op(M[..., :L - win + 1], M[..., win - p:win - p + L - win + 1])


def check_q_event(T: float, n: int, N: int, f_val: float, g_val: float,
                  rng: RngStream, batch: int = 1024) -> CheckReport:
    """Frequency of a window of duration f_val with displacement above g_val,
    against the closed-form tail bound."""
    if f_val > T:
        raise ValueError("window length f_val must not exceed T")
    if f_val <= 0 or g_val < 0:
        raise ValueError("need f_val > 0 and g_val >= 0")
    g = rng.generator()
    w = max(int(math.floor(f_val / (T / n))), 1)
    occurred = 0
    done = 0
    while done < N:
        b = min(batch, N - done)
        loops = _loop_batch(g, b, n, T)
        ext = np.concatenate([loops, loops[:, :w, :]], axis=1)
        win = w + 1
        rx = _sliding_extreme(ext[:, :, 0], win, np.maximum) - \
            _sliding_extreme(ext[:, :, 0], win, np.minimum)
        ry = _sliding_extreme(ext[:, :, 1], win, np.maximum) - \
            _sliding_extreme(ext[:, :, 1], win, np.minimum)
        low = np.max(np.maximum(rx, ry), axis=1)
        up = np.max(np.hypot(rx, ry), axis=1)
        occurred += int(np.count_nonzero(low > g_val))
        for k in np.flatnonzero((low <= g_val) & (up > g_val)):
            if _window_displacement_exceeds(ext[k], w, g_val):
                occurred += 1
        done += b
    emp = occurred / N
    bound = (32.0 * SQRT2 * T / (math.sqrt(math.pi) * math.sqrt(f_val) * g_val)
             + 16.0 * math.sqrt(T) / (math.sqrt(math.pi) * g_val)) \
        * math.exp(-g_val ** 2 / (128.0 * f_val)) if g_val > 0 else math.inf
    if bound >= 1.0:
        return CheckReport(name="q_event", passed=True, statistic=emp,
                           threshold=1.0, samples=N, seed=rng.seed,
                           details=f"vacuous: bound {bound:.4g} >= 1; empirical {emp:.5f}")
    se = math.sqrt(bound * (1.0 - bound) / N)
    passed = emp <= bound + 3.0 * se
    return CheckReport(name="q_event", passed=passed, statistic=emp,
                       threshold=bound + 3.0 * se, samples=N, seed=rng.seed,
                       details=f"bound {bound:.4g}")


def _window_displacement_exceeds(pts: np.ndarray, w: int, g_val: float) -> bool:
    L = len(pts)
    for r in range(1, w + 1):
        d = pts[r:] - pts[:L - r]
        if np.any(d[:, 0] ** 2 + d[:, 1] ** 2 > g_val * g_val):
            return True
    return False


# ---------------------------------------------------------------------------
# fuzz input generators (shared with the test suite)

def fuzz_hull(g: np.random.Generator, n_min: int = 8, n_max: int = 60,
              scale: float | None = None):
    """Convex hull of a random point cloud (gaussian blob, disk, or annulus)."""
    n = int(g.integers(n_min, n_max + 1))
    s = scale if scale is not None else float(g.uniform(0.5, 20.0))
    kind = int(g.integers(3))
    if kind == 0:
        pts = g.normal(0.0, s, size=(n, 2))
    elif kind == 1:
        r = s * np.sqrt(g.uniform(0.0, 1.0, size=n))
        th = g.uniform(0.0, 2.0 * math.pi, size=n)
        pts = np.column_stack([r * np.cos(th), r * np.sin(th)])
    else:
        r = s * g.uniform(0.6, 1.0, size=n)
        th = g.uniform(0.0, 2.0 * math.pi, size=n)
        pts = np.column_stack([r * np.cos(th), r * np.sin(th)])
    return convex_hull(pts)


def fuzz_star_polygon(g: np.random.Generator, n_min: int = 6, n_max: int = 40) -> np.ndarray:
    """Random star-shaped (hence simple) polygon around the origin.

    Every cyclic angular gap is kept below pi so each edge stays inside its
    own sector, which guarantees simplicity.
    """
    n = int(g.integers(n_min, n_max + 1))
    th = _sector_angles(g, n)
    r = g.uniform(0.2, 1.0, size=n) * float(g.uniform(0.5, 10.0))
    return np.column_stack([r * np.cos(th), r * np.sin(th)])


def _sector_angles(g: np.random.Generator, n: int) -> np.ndarray:
    while True:
        th = np.sort(g.uniform(0.0, 2.0 * math.pi, size=n))
        gaps = np.diff(np.concatenate([th, [th[0] + 2.0 * math.pi]]))
        if np.all(gaps > 1e-6) and np.max(gaps) < 0.9 * math.pi:
            return th


def tangent_circles_points(k: int = 720) -> tuple[np.ndarray, float, float, float]:
    """Point set realizing equality in the facet bound: the disk of radius 3
    centered at the origin plus the chord of the radius-4 circle (center
    (-1, 0), internally tangent at (3, 0)) that touches the disk at (-3, 0).

    Returns (points, r_in, r_out, expected_facet) with r_in = 3, r_out = 4 and
    expected facet length 4 * sqrt(3).
    """
    th = 2.0 * math.pi * (np.arange(k) + 0.5) / k  # offset avoids (+-3, 0)
    circle = np.column_stack([3.0 * np.cos(th), 3.0 * np.sin(th)])
    y = math.sqrt(12.0)
    extras = np.array([[3.0, 0.0], [-3.0, y], [-3.0, -y]])
    return np.vstack([circle, extras]), 3.0, 4.0, 2.0 * y


# ---------------------------------------------------------------------------
# suite: each entry runs one named check at its reference scale

def _suite_bridge_max(seed: int) -> CheckReport:
    return check_bridge_max_law(T=1.0, n=2 ** 14, N=100_000, rng=RngStream(seed, 101))


def _suite_sup_dominance(seed: int) -> CheckReport:
    return check_sup_dominance(T=1.0, n=4096, N=100_000, rng=RngStream(seed, 102))


def _suite_containment(seed: int, loops: int = 100) -> CheckReport:
    worst = -math.inf
    cells = 0
    ok = True
    grid = TimeGrid(T=1.0, n=1024)
    for i in range(loops):
        loop = sample_loop(grid, RngStream(seed, 10_000 + i))
        for m in (8, 16):
            rep = check_containment(loop, m=m, h=1.0 / 128.0, seed=seed)
            worst = max(worst, rep.statistic)
            cells += rep.samples
            ok = ok and rep.passed
    return CheckReport(name="containment", passed=ok, statistic=worst,
                       threshold=SQRT2 / 128.0, samples=cells, seed=seed,
                       details=f"{loops} loops, m in (8, 16)")


def _suite_bonnesen(seed: int, count: int = 1000) -> CheckReport:
    g = RngStream(seed, 103).generator()
    worst = math.inf
    ok = True
    for _ in range(count):
        rep = check_bonnesen(fuzz_hull(g), seed=seed)
        worst = min(worst, rep.statistic)
        ok = ok and rep.passed
    return CheckReport(name="bonnesen", passed=ok, statistic=worst,
                       threshold=-1e-9, samples=count, seed=seed,
                       details="minimum relative margin over fuzzed hulls")


def _suite_polygon_arclength(seed: int, count: int = 1000) -> CheckReport:
    g = RngStream(seed, 104).generator()
    worst = math.inf
    ok = True
    for _ in range(count):
        rep = check_polygon_arclength(fuzz_star_polygon(g), seed=seed)
        worst = min(worst, rep.statistic)
        ok = ok and rep.passed
    return CheckReport(name="polygon_arclength", passed=ok, statistic=worst,
                       threshold=0.0, samples=count, seed=seed,
                       details="minimum arclength margin over star polygons")


def _suite_facet_bound(seed: int, count: int = 1000) -> CheckReport:
    g = RngStream(seed, 105).generator()
    worst = -math.inf
    ok = True
    done = 0
    while done < count:
        hull = fuzz_hull(g)
        r_in = chebyshev_inradius_convex(hull).radius
        r_out = outradius(hull.vertices).radius
        if r_in <= 0.5 * r_out:
            continue
        rec = _exact_record(r_in, r_out)
        rep = check_facet_bound(rec, hull, seed=seed)
        worst = max(worst, rep.statistic)
        ok = ok and rep.passed
        done += 1
    pts, r_in, r_out_exp, expected = tangent_circles_points()
    hull = convex_hull(pts)
    r_out = outradius(pts).radius
    rep_eq = check_facet_bound(_exact_record(r_in, r_out), hull, seed=seed)
    eq_err = abs(longest_facet(hull) - expected) / expected
    ok = ok and rep_eq.passed and eq_err <= 1e-9 and abs(r_out - r_out_exp) <= 1e-9
    return CheckReport(name="facet_bound", passed=ok, statistic=worst,
                       threshold=0.0, samples=count + 1, seed=seed,
                       details=f"equality-case relative error {eq_err:.2e}")


def _exact_record(r_in: float, r_out: float) -> ObservableRecord:
    """Record carrying exact radii only, for raster-free facet checks."""
    return ObservableRecord(T=0.0, n=0, h=0.0, seed=0, stream_id=0, sweep=0,
                            area=0.0, area_excess=0.0, r_in=r_in, r_out=r_out,
                            ann_width=r_out - r_in, mlr=0.0, longest_facet=0.0,
                            hull_arclength=0.0)


def _suite_rate_functional(seed: int, count: int = 1000) -> CheckReport:
    g = RngStream(seed, 106).generator()
    circle = np.array([0.0, -1.0, 1.0], dtype=complex)  # (a_-1, a_0, a_1)
    I, A = rate_functional(circle)
    exact_ok = (abs(I - 2.0 * math.pi ** 2) <= 1e-12 * 2.0 * math.pi ** 2
                and abs(A - math.pi) <= 1e-12 * math.pi)
    worst = 0.0
    ok = exact_ok
    for _ in range(count):
        N = int(g.integers(1, 33))
        a = np.zeros(2 * N + 1, dtype=complex)
        mods = g.uniform(0.0, 1.0, size=N) / np.arange(1, N + 1)
        phases = g.uniform(0.0, 2.0 * math.pi, size=N)
        a[N + 1:] = mods * np.exp(1j * phases)
        a[N] = g.normal() + 1j * g.normal()  # constant offset, no area effect
        rep = check_rate_functional(a, seed=seed)
        worst = max(worst, rep.statistic)
        ok = ok and rep.passed
    return CheckReport(name="rate_functional", passed=ok, statistic=worst,
                       threshold=1e-6, samples=count + 1, seed=seed,
                       details=f"circle identities exact: {exact_ok}")


def _suite_q_event(seed: int) -> CheckReport:
    return check_q_event(T=1.0, n=4096, N=100_000, f_val=1.0 / 64.0, g_val=1.0,
                         rng=RngStream(seed, 107))


SUITE = {
    "bridge_max": _suite_bridge_max,
    "sup_dominance": _suite_sup_dominance,
    "containment": _suite_containment,
    "bonnesen": _suite_bonnesen,
    "polygon_arclength": _suite_polygon_arclength,
    "facet_bound": _suite_facet_bound,
    "rate_functional": _suite_rate_functional,
    "q_event": _suite_q_event,
}


def run_suite(selector: str, seed: int) -> list[CheckReport]:
    """Run the named check (or 'all') at reference scale; unknown name raises."""
    if selector == "all":
        names = list(SUITE)
    elif selector in SUITE:
        names = [selector]
    else:
        raise KeyError(f"unknown check {selector!r}; choose from "
                       f"{', '.join(SUITE)} or 'all'")
    return [SUITE[name](seed) for name in names]
