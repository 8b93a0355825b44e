"""The accelerated kernels and their pure-numpy reference path."""

import subprocess
import sys

import numpy as np

from fraclab import _accel


def test_kronrod_weights_sum_to_two():
    assert abs(_accel.GK_WEIGHTS_K.sum() - 2.0) < 1e-14
    assert abs(_accel.GK_WEIGHTS_G.sum() - 2.0) < 1e-14


def test_panel_reduce_integrates_polynomials_exactly():
    # Gauss-7 is exact through degree 13, Kronrod-15 through degree 22; a
    # degree-9 polynomial must give zero embedded error.
    fvals = (_accel.GK_NODES**9 + 3.0 * _accel.GK_NODES**2)[None, :]
    values, errors = _accel.panel_reduce(fvals, np.array([1.0]))
    assert abs(values[0] - 2.0) < 1e-14
    assert errors[0] < 1e-13


def test_panel_reduce_flags_rough_integrands():
    fvals = np.abs(_accel.GK_NODES)[None, :]
    _, errors = _accel.panel_reduce(fvals, np.array([1.0]))
    assert errors[0] > 1e-6


def test_poisson_kernel_values_match_formula():
    y2 = np.array([4.0, 9.0])
    dist2 = np.array([4.0, 16.0])
    out = _accel.poisson_kernel_values(1.0, y2, dist2, 0.5, 1, 1.0 / np.pi)
    expect = (1.0 / np.pi) * (1.0 / (y2 - 1.0)) ** 0.5 / np.sqrt(dist2)
    np.testing.assert_allclose(out, expect, rtol=1e-15)


def test_kahan_sum_beats_naive_on_adversarial_input():
    vals = np.array([1e16, 1.0, -1e16, 1.0] * 50)
    assert _accel.kahan_sum(vals) == 100.0


def test_fallback_path_gives_identical_results():
    code = (
        "import numpy as np\n"
        "from fraclab import _accel\n"
        "assert not _accel.NUMBA_ACTIVE\n"
        "fv = (_accel.GK_NODES**7 - _accel.GK_NODES)[None, :]\n"
        "v, e = _accel.panel_reduce(fv, np.array([0.5]))\n"
        "print(repr(float(v[0])), repr(float(e[0])))\n"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True, text=True,
        env={"FRACLAB_NO_NUMBA": "1", "PATH": "/usr/bin:/bin"},
    )
    assert out.returncode == 0, out.stderr
    fv = (_accel.GK_NODES**7 - _accel.GK_NODES)[None, :]
    v, e = _accel.panel_reduce(fv, np.array([0.5]))
    got_v, got_e = (float(eval(tok)) for tok in out.stdout.split())
    assert got_v == float(v[0])
    assert got_e == float(e[0])
