"""The compiled kernels must agree with the numpy reference bit for bit."""

import numpy as np
import pytest

import tetracut.surface as sf
from tetracut import kernels_numpy, tables

kernels_numba = pytest.importorskip("tetracut.kernels_numba")


def _random_queries(rng, n):
    out = []
    for _ in range(n):
        p = sf.chart_xy(0, rng.dirichlet((1, 1, 1)))
        q = rng.dirichlet((1, 1, 1))
        qface = int(rng.integers(4))
        out.append((float(p[0]), float(p[1]), qface, q))
    return out


@pytest.mark.parametrize("depth", [2, 4])
def test_eval_chains_agreement(depth):
    rng = np.random.default_rng(101)
    for base in range(4):
        tab = tables.chain_table(base, depth)
        for px, py, qface, qb in _random_queries(rng, 10):
            qxy = sf.chart_xy(qface, qb)
            args = (
                px,
                py,
                float(qxy[0]),
                float(qxy[1]),
                qface,
                tab.last_face,
                tab.ncross,
                tab.edge_a,
                tab.edge_b,
                tab.place_last,
            )
            ok_r, len_r, tpar_r, spar_r, qpx_r, qpy_r = kernels_numpy.eval_chains(*args)
            ok_g, len_g, tpar_g, spar_g, qpx_g, qpy_g = kernels_numba.eval_chains(*args)
            np.testing.assert_array_equal(np.asarray(ok_r), np.asarray(ok_g))
            np.testing.assert_array_equal(len_r, len_g)
            np.testing.assert_array_equal(qpx_r, qpx_g)
            np.testing.assert_array_equal(qpy_r, qpy_g)
            # crossing parameters are meaningful only on valid chains,
            # within each chain's actual crossing count
            for i in np.nonzero(np.asarray(ok_r))[0]:
                k = int(tab.ncross[i])
                np.testing.assert_array_equal(tpar_r[i, :k], tpar_g[i, :k])
                np.testing.assert_array_equal(spar_r[i, :k], spar_g[i, :k])


def test_map_samples_agreement():
    rng = np.random.default_rng(202)
    tab = tables.chain_table(0, 4)
    checked = 0
    for px, py, qface, qb in _random_queries(rng, 40):
        qxy = sf.chart_xy(qface, qb)
        ok, length, tpar, spar, qpx, qpy = kernels_numpy.eval_chains(
            px,
            py,
            float(qxy[0]),
            float(qxy[1]),
            qface,
            tab.last_face,
            tab.ncross,
            tab.edge_a,
            tab.edge_b,
            tab.place_last,
        )
        for i in np.nonzero(ok)[0][:2]:
            i = int(i)
            k = int(tab.ncross[i])
            tpar_row = np.zeros(tab.depth)
            tpar_row[:k] = tpar[i, :k]
            args = (
                px,
                py,
                float(qpx[i]),
                float(qpy[i]),
                k,
                tpar_row,
                tab.face_seq[i],
                tab.place_step[i],
                kernels_numpy.N_SAMPLES,
            )
            f_ref, b_ref = kernels_numpy.map_samples(*args)
            f_got, b_got = kernels_numba.map_samples(*args)
            np.testing.assert_array_equal(f_ref, f_got)
            np.testing.assert_allclose(b_ref, b_got, rtol=0, atol=1e-15)
            checked += 1
    assert checked >= 40


def test_backend_env_selection():
    import subprocess
    import sys

    for name in ("numpy", "numba"):
        out = subprocess.run(
            [sys.executable, "-c", "import tetracut.backend as b; print(b.BACKEND)"],
            capture_output=True,
            text=True,
            env={"PATH": "/usr/bin:/bin", "TETRACUT_BACKEND": name},
        )
        assert out.returncode == 0, out.stderr
        assert out.stdout.strip() == name
