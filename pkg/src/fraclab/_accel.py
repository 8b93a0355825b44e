"""Optional numba acceleration for the hot numeric kernels.

The pure-numpy implementations below are the reference path.  When numba is
importable and the environment variable ``FRACLAB_NO_NUMBA`` is unset (or not
one of ``1/true/yes``), the same functions are compiled with ``@njit``.  Both
paths produce bit-identical results for the operations used here; the
benchmark in ``benchmarks/bench_accel.py`` compares them.
"""

import os

import numpy as np

_FLAG = os.environ.get("FRACLAB_NO_NUMBA", "").strip().lower()
NUMBA_REQUESTED = _FLAG not in ("1", "true", "yes")

if NUMBA_REQUESTED:
    try:
        from numba import njit as _njit

        NUMBA_ACTIVE = True
    except ImportError:  # pragma: no cover - numba is a hard dep in practice
        NUMBA_ACTIVE = False
else:
    NUMBA_ACTIVE = False


def _identity(fn):
    return fn


def accelerate(fn):
    """Compile ``fn`` with numba when enabled, otherwise return it unchanged."""
    if NUMBA_ACTIVE:
        return _njit(cache=True)(fn)
    return fn


# --- Gauss-Kronrod 7/15 nodes and weights on [-1, 1] ------------------------
# Standard QUADPACK constants: 15 Kronrod nodes, the 7 even-indexed ones are
# the Gauss nodes.

GK_NODES = np.array(
    [
        -0.991455371120812639206854697526329,
        -0.949107912342758524526189684047851,
        -0.864864423359769072789712788640926,
        -0.741531185599394439863864773280788,
        -0.586087235467691130294144838258730,
        -0.405845151377397166906606412076961,
        -0.207784955007898467600689403773245,
        0.0,
        0.207784955007898467600689403773245,
        0.405845151377397166906606412076961,
        0.586087235467691130294144838258730,
        0.741531185599394439863864773280788,
        0.864864423359769072789712788640926,
        0.949107912342758524526189684047851,
        0.991455371120812639206854697526329,
    ]
)

GK_WEIGHTS_K = np.array(
    [
        0.022935322010529224963732008058970,
        0.063092092629978553290700663189204,
        0.104790010322250183839876322541518,
        0.140653259715525918745189590510238,
        0.169004726639267902826583426598550,
        0.190350578064785409913256402421014,
        0.204432940075298892414161999234649,
        0.209482141084727828012999174891714,
        0.204432940075298892414161999234649,
        0.190350578064785409913256402421014,
        0.169004726639267902826583426598550,
        0.140653259715525918745189590510238,
        0.104790010322250183839876322541518,
        0.063092092629978553290700663189204,
        0.022935322010529224963732008058970,
    ]
)

# Gauss-7 weights spread onto the 15-point layout (zeros at Kronrod-only
# nodes) so a single f-evaluation array serves both rules.
GK_WEIGHTS_G = np.zeros(15)
GK_WEIGHTS_G[1::2] = np.array(
    [
        0.129484966168869693270611432679082,
        0.279705391489276667901467771423780,
        0.381830050505118944950369775488975,
        0.417959183673469387755102040816327,
        0.381830050505118944950369775488975,
        0.279705391489276667901467771423780,
        0.129484966168869693270611432679082,
    ]
)


def _panel_reduce_impl(fvals, half_widths):
    """Per-panel Kronrod value and |K15 - G7| error from f at the 15 nodes.

    fvals has shape (n_panels, 15); half_widths has shape (n_panels,).
    """
    n = fvals.shape[0]
    values = np.empty(n)
    errors = np.empty(n)
    for i in range(n):
        k = 0.0
        g = 0.0
        for j in range(15):
            k += GK_WEIGHTS_K[j] * fvals[i, j]
            g += GK_WEIGHTS_G[j] * fvals[i, j]
        values[i] = k * half_widths[i]
        errors[i] = abs(k - g) * half_widths[i]
    return values, errors


panel_reduce = accelerate(_panel_reduce_impl)


def _poisson_kernel_impl(one_minus_x2, y_norm2, dist2, s, d, c_ds):
    """Poisson kernel c_ds * ((1-|x|^2)/(|y|^2-1))^s / |x-y|^d, elementwise.

    one_minus_x2 is scalar, y_norm2 and dist2 are arrays of |y|^2 and
    |x-y|^2 for a fixed evaluation point x inside the unit ball.
    """
    n = y_norm2.shape[0]
    out = np.empty(n)
    for i in range(n):
        out[i] = (
            c_ds
            * (one_minus_x2 / (y_norm2[i] - 1.0)) ** s
            / dist2[i] ** (0.5 * d)
        )
    return out


poisson_kernel_values = accelerate(_poisson_kernel_impl)


def _kahan_sum_impl(values):
    """Compensated summation (Kahan-Babuska/Neumaier variant).

    Unlike plain Kahan, the compensation survives terms much larger than
    the running total, so cancellation-heavy inputs still sum exactly.
    """
    total = 0.0
    comp = 0.0
    for i in range(values.shape[0]):
        v = values[i]
        t = total + v
        if abs(total) >= abs(v):
            comp += (total - t) + v
        else:
            comp += (v - t) + total
        total = t
    return total + comp


kahan_sum = accelerate(_kahan_sum_impl)
