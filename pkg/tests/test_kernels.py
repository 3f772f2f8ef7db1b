import os

import numpy as np
import pytest

from conftest import random_dist
from oracles import brute_convolve
from premia import kernels
from premia.dist import MERGE_TOL


def test_backend_selected():
    assert kernels.BACKEND in kernels.BACKENDS


def test_backends_agree_with_oracle(backend):
    rng = np.random.default_rng(11)
    for _ in range(200):
        a, b = random_dist(rng), random_dist(rng)
        x, p = backend.convolve_sorted(a.support, a.masses, b.support, b.masses, MERGE_TOL, 10**6)
        ox, op = brute_convolve(a.support.tolist(), a.masses.tolist(), b.support.tolist(), b.masses.tolist())
        assert len(x) == len(ox)
        np.testing.assert_allclose(x, ox, rtol=0, atol=1e-9)
        np.testing.assert_allclose(p, op, rtol=0, atol=1e-12)


def test_long_chain_uses_anchors(backend):
    # consecutive sums 0.4e-9 apart: every gap is under the merge tolerance
    # but the chain spans 2e-9, so it splits at anchors 0 and 1.2e-9
    xa = np.array([0.0, 10.0])
    pa = np.array([0.5, 0.5])
    xb = np.arange(6) * 0.4e-9
    pb = np.full(6, 1 / 6)
    x, p = backend.convolve_sorted(xa, pa, xb, pb, MERGE_TOL, 100)
    ox, op = brute_convolve(xa.tolist(), pa.tolist(), xb.tolist(), pb.tolist())
    assert len(ox) == 4  # {0..0.8e-9}, {1.2e-9..2.0e-9}, then the same around 10
    np.testing.assert_allclose(x, ox, rtol=0, atol=1e-15)
    np.testing.assert_allclose(p, op, rtol=0, atol=1e-15)


def test_cap_returns_none(backend):
    a = np.arange(10.0)
    w = np.full(10, 0.1)
    assert backend.convolve_sorted(a, w, a * 10, w, MERGE_TOL, 99) is None
    assert len(backend.convolve_sorted(a, w, a * 10, w, MERGE_TOL, 100)[0]) == 100


def test_compiled_matches_fallback_bitwise_order():
    if "cython" not in kernels.BACKENDS:
        pytest.skip("compiled kernels not built")
    c, py = kernels.BACKENDS["cython"], kernels.BACKENDS["python"]
    rng = np.random.default_rng(3)
    for _ in range(50):
        a, b = random_dist(rng, max_points=300), random_dist(rng, max_points=300)
        xc, pc = c.convolve_sorted(a.support, a.masses, b.support, b.masses, MERGE_TOL, 10**6)
        xp, pp = py.convolve_sorted(a.support, a.masses, b.support, b.masses, MERGE_TOL, 10**6)
        np.testing.assert_array_equal(xc, xp)
        np.testing.assert_allclose(pc, pp, rtol=0, atol=1e-12)
        for theta in (0.01, 1.0, 30.0):
            shift = float(a.support[-1])
            lc = c.log_moment_shifted(a.support, a.masses, theta, shift)
            lp = py.log_moment_shifted(a.support, a.masses, theta, shift)
            assert lc == pytest.approx(lp, rel=1e-13, abs=1e-13)


def test_log_moment_skips_zero_mass(backend):
    x = np.array([0.0, 1.0, 2.0])
    p = np.array([0.5, 0.5, 0.0])
    expected = np.log(0.5 * np.exp(-1.0) + 0.5)
    assert backend.log_moment_shifted(x, p, 1.0, 1.0) == pytest.approx(expected, rel=1e-15)


def test_env_forces_fallback():
    import subprocess
    import sys

    env = dict(os.environ, PREMIA_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import premia; print(premia.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


def test_benchmark_runs(capsys, monkeypatch):
    import runpy
    import sys

    path = os.path.join(os.path.dirname(__file__), "..", "benchmarks", "bench_kernels.py")
    monkeypatch.setattr(sys, "argv", ["bench_kernels.py", "--sizes", "5", "--repeat", "1"])
    runpy.run_path(path, run_name="__main__")
    assert "convolve" in capsys.readouterr().out
