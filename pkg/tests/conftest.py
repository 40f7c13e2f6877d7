import numpy as np
import pytest


def polyline_polygon(vertices, per_edge: int = 16) -> np.ndarray:
    """Closed polyline tracing the polygon edges at per_edge points each."""
    v = np.asarray(vertices, dtype=float)
    segs = []
    for i in range(len(v)):
        a, b = v[i], v[(i + 1) % len(v)]
        t = np.linspace(0.0, 1.0, per_edge, endpoint=False)[:, None]
        segs.append(a + t * (b - a))
    return np.vstack(segs)


def circle_points(radius: float, k: int, center=(0.0, 0.0)) -> np.ndarray:
    th = 2.0 * np.pi * np.arange(k) / k
    return np.column_stack([center[0] + radius * np.cos(th),
                            center[1] + radius * np.sin(th)])


def star_polygon(g: np.random.Generator, n_lo=8, n_hi=40, scale=None) -> np.ndarray:
    """Simple polygon: star-shaped, every cyclic angular gap below pi."""
    n = int(g.integers(n_lo, n_hi))
    while True:
        th = np.sort(g.uniform(0, 2 * np.pi, n))
        gaps = np.diff(np.concatenate([th, [th[0] + 2 * np.pi]]))
        if np.all(gaps > 1e-3) and gaps.max() < 0.9 * np.pi:
            break
    s = scale if scale is not None else g.uniform(0.5, 5.0)
    r = g.uniform(0.3, 1.0, n) * s
    return np.column_stack([r * np.cos(th), r * np.sin(th)])


def arclength(pts: np.ndarray) -> float:
    e = np.roll(pts, -1, axis=0) - pts
    return float(np.hypot(e[:, 0], e[:, 1]).sum())


@pytest.fixture
def nprng():
    return np.random.default_rng(0xC0FFEE)
