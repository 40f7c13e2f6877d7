import math

import numpy as np
import pytest
from scipy import integrate, stats

from loopfluct.sampler import (LoopPath, RngStream, TimeGrid,
                               bridge_max_cdf_complement, chi2_pdf,
                               load_loop_binary, load_loop_csv, sample_bridge,
                               sample_loop, save_loop_binary, save_loop_csv)


class TestTimeGrid:
    def test_dt(self):
        assert TimeGrid(T=2.0, n=8).dt == 0.25

    def test_validation(self):
        with pytest.raises(ValueError):
            TimeGrid(T=0.0, n=8)
        with pytest.raises(ValueError):
            TimeGrid(T=1.0, n=1)


class TestRngStream:
    def test_reproducible(self):
        a = RngStream(7, 3).generator().normal(size=10)
        b = RngStream(7, 3).generator().normal(size=10)
        assert np.array_equal(a, b)

    def test_streams_differ(self):
        a = RngStream(7, 0).generator().normal(size=10)
        b = RngStream(7, 1).generator().normal(size=10)
        assert not np.array_equal(a, b)

    def test_substream(self):
        assert RngStream(7, 2).substream(5) == RngStream(7, 7)


class TestSampleLoop:
    def test_starts_at_origin_exactly(self):
        loop = sample_loop(TimeGrid(T=1.0, n=64), RngStream(1))
        assert loop.points[0, 0] == 0.0 and loop.points[0, 1] == 0.0

    def test_deterministic(self):
        g = TimeGrid(T=2.0, n=128)
        a = sample_loop(g, RngStream(5, 9))
        b = sample_loop(g, RngStream(5, 9))
        assert np.array_equal(a.points, b.points)

    def test_midpoint_variance(self):
        # n = 2: midpoint is Gaussian with per-coordinate variance T/4
        T, N = 1.0, 100_000
        g = TimeGrid(T=T, n=2)
        mids = np.array([sample_loop(g, RngStream(11, i)).points[1] for i in range(N)])
        target = T / 4
        se = target * math.sqrt(2.0 / (N - 1))
        for c in range(2):
            assert abs(mids[:, c].var() - target) <= 3 * se

    def test_zero_mean(self):
        T, N = 1.0, 20_000
        g = TimeGrid(T=T, n=8)
        pts = np.array([sample_loop(g, RngStream(13, i)).points for i in range(N)])
        for k in range(1, 8):
            var = (k / 8) * T * (1 - k / 8)
            bound = 4 * math.sqrt(var) / math.sqrt(N)
            assert np.all(np.abs(pts[:, k, :].mean(axis=0)) <= bound)

    def test_grid_variance_profile(self):
        T, n, N = 2.0, 8, 50_000
        g = TimeGrid(T=T, n=n)
        pts = np.array([sample_loop(g, RngStream(17, i)).points for i in range(N)])
        for k in range(1, n):
            t = k * g.dt
            target = t * (T - t) / T
            se = target * math.sqrt(2.0 / (N - 1))
            for c in range(2):
                assert abs(pts[:, k, c].var() - target) <= 4 * se

    def test_time_shift_invariance(self):
        # same-lag displacement gathered at two offsets is equidistributed
        T, n, N, lag = 1.0, 32, 10_000, 5
        g = TimeGrid(T=T, n=n)
        pts = np.array([sample_loop(g, RngStream(19, i)).points for i in range(N)])
        def disp(k):
            d = pts[:, (k + lag) % n, :] - pts[:, k, :]
            return np.hypot(d[:, 0], d[:, 1])
        p = stats.ks_2samp(disp(0), disp(11)).pvalue
        assert p > 0.001

    def test_validation(self):
        with pytest.raises(ValueError):
            LoopPath(grid=TimeGrid(T=1.0, n=4), points=np.zeros((3, 2)))
        with pytest.raises(ValueError):
            LoopPath(grid=TimeGrid(T=1.0, n=3),
                     points=np.array([[0, 0], [1, np.nan], [0, 1]]))


class TestSampleBridge:
    def test_single_step(self):
        out = sample_bridge((0, 1), (2, 3), 1.0, 1, RngStream(2))
        assert np.array_equal(out, np.array([[0, 1], [2, 3]], float))

    def test_exact_endpoints(self):
        p, q = (0.3, -0.7), (1.5, 2.5)
        out = sample_bridge(p, q, 2.0, 50, RngStream(3))
        assert tuple(out[0]) == p and tuple(out[-1]) == q

    def test_interior_mean_and_variance(self):
        p, q = np.array([1.0, -1.0]), np.array([3.0, 1.0])
        duration, steps, N = 2.0, 4, 100_000
        mid = np.array([sample_bridge(p, q, duration, steps, RngStream(23, i))[2]
                        for i in range(N)])
        s = 0.5
        mean_target = p + s * (q - p)
        var_target = s * (1 - s) * duration
        assert np.all(np.abs(mid.mean(axis=0) - mean_target)
                      <= 4 * math.sqrt(var_target / N))
        se = var_target * math.sqrt(2.0 / (N - 1))
        for c in range(2):
            assert abs(mid[:, c].var() - var_target) <= 4 * se

    def test_matches_loop_law_on_max_modulus(self):
        T, n, N = 1.0, 64, 10_000
        g = TimeGrid(T=T, n=n)
        loop_max = np.empty(N)
        bridge_max = np.empty(N)
        for i in range(N):
            lp = sample_loop(g, RngStream(29, i)).points
            loop_max[i] = np.max(np.hypot(lp[:, 0], lp[:, 1]))
            bp = sample_bridge((0, 0), (0, 0), T, n, RngStream(31, i))
            bridge_max[i] = np.max(np.hypot(bp[:, 0], bp[:, 1]))
        assert stats.ks_2samp(loop_max, bridge_max).pvalue > 0.001

    def test_bad_duration(self):
        with pytest.raises(ValueError):
            sample_bridge((0, 0), (1, 1), 0.0, 4, RngStream(1))


class TestBridgeMaxCdf:
    def test_reference_point(self):
        assert bridge_max_cdf_complement(math.sqrt(0.5), 1.0) == pytest.approx(math.exp(-1))

    def test_zero(self):
        assert bridge_max_cdf_complement(0.0, 3.0) == 1.0

    def test_deep_tail_underflow_safe(self):
        assert bridge_max_cdf_complement(10.0, 1.0) == pytest.approx(math.exp(-200))

    def test_negative_r(self):
        with pytest.raises(ValueError):
            bridge_max_cdf_complement(-0.1, 1.0)


class TestChi2Pdf:
    def test_m2_at_zero(self):
        assert chi2_pdf(0.0, 2) == 0.5

    @pytest.mark.parametrize("m", range(1, 11))
    def test_integrates_to_one(self, m):
        val, err = integrate.quad(chi2_pdf, 0, np.inf, args=(m,), limit=200)
        assert val == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize("m", range(1, 11))
    def test_mean(self, m):
        val, err = integrate.quad(lambda x: x * chi2_pdf(x, m), 0, np.inf, limit=200)
        assert val == pytest.approx(m, rel=1e-8)

    def test_negative_x(self):
        with pytest.raises(ValueError):
            chi2_pdf(-1.0, 3)


class TestSerialization:
    def test_csv_roundtrip(self, tmp_path):
        loop = sample_loop(TimeGrid(T=1.5, n=32), RngStream(41))
        path = tmp_path / "loop.csv"
        save_loop_csv(loop, path)
        back = load_loop_csv(path, T=1.5)
        assert np.array_equal(back.points, loop.points)
        assert back.grid == loop.grid

    def test_binary_roundtrip(self, tmp_path):
        loop = sample_loop(TimeGrid(T=2.5, n=64), RngStream(43, 7))
        path = tmp_path / "loop.bin"
        save_loop_binary(loop, path, seed=43)
        back, seed = load_loop_binary(path)
        assert seed == 43
        assert back.grid == loop.grid
        assert np.array_equal(back.points, loop.points)

    def test_binary_rerun_byte_identical(self, tmp_path):
        for name in ("a.bin", "b.bin"):
            save_loop_binary(sample_loop(TimeGrid(T=1.0, n=16), RngStream(47)),
                             tmp_path / name, seed=47)
        assert (tmp_path / "a.bin").read_bytes() == (tmp_path / "b.bin").read_bytes()
