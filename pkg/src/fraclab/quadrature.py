"""Certified adaptive quadrature.

One-dimensional adaptive Gauss-Kronrod (7/15 embedded pair) with panel-wise
error estimates, endpoint substitutions that remove the (rho^2-1)^{-s}
boundary weight analytically, an unbounded-domain map, and the tensorized
sphere-times-radius rules over the exterior of the unit ball for d in
{1, 2, 3}.

All integrands are numpy-vectorized: they accept an ndarray of abscissae and
return an ndarray of values.  An integrand may instead return a pair
``(values, errors)``; the per-point errors are then folded into the report's
error estimate (this is how inner angular integrals propagate their
uncertainty to the radial rule).
"""

from dataclasses import dataclass, replace

import numpy as np

from ._accel import GK_NODES, GK_WEIGHTS_K, kahan_sum, panel_reduce


class QuadratureError(ValueError):
    """Invalid quadrature input (bad interval, tolerance, or declaration)."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budgets for the adaptive rules."""

    rel_tol: float = 1e-7
    abs_tol: float = 1e-10
    max_subdivisions: int = 20000
    singular_exponent: float = 0.5
    near_boundary_split_factor: float = 16.0

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise QuadratureError("tolerances must be positive")
        if self.max_subdivisions < 64:
            raise QuadratureError("max_subdivisions must be >= 64")
        if self.near_boundary_split_factor < 2:
            raise QuadratureError("near_boundary_split_factor must be >= 2")
        if not 0.0 < self.singular_exponent < 1.0:
            raise QuadratureError("singular_exponent must lie in (0, 1)")

    def tolerance(self, value):
        return max(self.abs_tol, self.rel_tol * abs(value))


@dataclass(frozen=True)
class EvaluationReport:
    """A computed scalar with a certified error estimate and work counters."""

    value: float
    error_estimate: float
    function_evals: int
    converged: bool

    def __add__(self, other):
        return EvaluationReport(
            value=self.value + other.value,
            error_estimate=self.error_estimate + other.error_estimate,
            function_evals=self.function_evals + other.function_evals,
            converged=self.converged and other.converged,
        )

    def scaled(self, factor):
        return replace(
            self,
            value=self.value * factor,
            error_estimate=self.error_estimate * abs(factor),
        )


ZERO_REPORT = EvaluationReport(0.0, 0.0, 0, True)


def _evaluate_panels(f, lo, hi):
    """Evaluate f on the 15 Kronrod nodes of each panel.

    Returns (panel_values, panel_errors, aux_errors, n_evals) where
    aux_errors carries integrand-supplied per-point uncertainties.
    """
    centers = 0.5 * (lo + hi)
    halves = 0.5 * (hi - lo)
    x = (centers[:, None] + halves[:, None] * GK_NODES[None, :]).ravel()
    res = f(x)
    if isinstance(res, tuple):
        fv, fe = res
        fe = np.asarray(fe, dtype=float).reshape(len(lo), 15)
        aux = halves * (np.abs(fe) @ GK_WEIGHTS_K)
    else:
        fv = res
        aux = np.zeros(len(lo))
    fv = np.asarray(fv, dtype=float).reshape(len(lo), 15)
    if not np.all(np.isfinite(fv)):
        raise QuadratureError("integrand returned a non-finite value")
    values, errors = panel_reduce(fv, halves)
    return values, errors, aux, x.size


def _adaptive(f, points, rel_tol, abs_tol, max_subdivisions):
    """Adaptive bisection driver over an initial partition ``points``.

    Returns (value, error_estimate, function_evals, converged).
    """
    points = np.asarray(points, dtype=float)
    lo = points[:-1].copy()
    hi = points[1:].copy()
    keep = hi > lo
    lo, hi = lo[keep], hi[keep]
    if lo.size == 0:
        return 0.0, 0.0, 0, True
    values, errors, aux, n_evals = _evaluate_panels(f, lo, hi)
    while True:
        total = kahan_sum(values)
        gk_err = kahan_sum(errors)
        aux_err = kahan_sum(aux)
        err = gk_err + aux_err
        tol = max(abs_tol, rel_tol * abs(total))
        if err <= tol:
            return total, err, n_evals, True
        if len(lo) >= max_subdivisions:
            return total, err, n_evals, False
        if aux_err > 0.5 * tol and gk_err <= 0.5 * tol:
            # The estimate is dominated by integrand-supplied (inner-rule)
            # uncertainty, which panel splitting cannot reduce; stop here.
            return total, err, n_evals, False
        # Split every panel holding more than its share of the budget; always
        # split at least the worst one.
        thresh = tol / (2.0 * len(lo))
        split = errors > thresh
        if not split.any():
            split[np.argmax(errors)] = True
        s_lo, s_hi = lo[split], hi[split]
        mid = 0.5 * (s_lo + s_hi)
        new_lo = np.concatenate([s_lo, mid])
        new_hi = np.concatenate([mid, s_hi])
        nv, ne, na, ct = _evaluate_panels(f, new_lo, new_hi)
        n_evals += ct
        lo = np.concatenate([lo[~split], new_lo])
        hi = np.concatenate([hi[~split], new_hi])
        values = np.concatenate([values[~split], nv])
        errors = np.concatenate([errors[~split], ne])
        aux = np.concatenate([aux[~split], na])


def _partition(a, b, breakpoints=None):
    pts = [a, b]
    if breakpoints is not None:
        pts.extend(p for p in breakpoints if a < p < b)
    return np.array(sorted(set(pts)))


def integrate_1d(f, a, b, spec, breakpoints=None):
    """Adaptive Gauss-Kronrod integration of ``f`` over (a, b)."""
    if not a < b:
        raise QuadratureError(f"need a < b, got [{a}, {b}]")
    value, err, n_evals, ok = _adaptive(
        f, _partition(a, b, breakpoints), spec.rel_tol, spec.abs_tol,
        spec.max_subdivisions,
    )
    return EvaluationReport(value, err, n_evals, ok)


def integrate_radial_singular(f, s, R, spec, breakpoints=None, offset_arg=False):
    """Integrate f(rho) = (rho-1)^{-s} h(rho) over (1, R), h bounded near 1.

    Uses the substitution rho = 1 + w^{1/(1-s)}; its Jacobian
    w^{s/(1-s)}/(1-s) cancels the endpoint singularity identically, so the
    transformed integrand is bounded and the plain adaptive rule applies.

    With ``offset_arg=True`` the integrand receives the exact boundary offset
    q = rho - 1 (= w^{1/(1-s)}, computed without cancellation) instead of rho
    itself; kernel-type integrands use this to evaluate the singular weight
    accurately arbitrarily close to the sphere.
    """
    if R <= 1.0:
        raise QuadratureError("R must exceed 1")
    if not 0.0 < s < 1.0:
        raise QuadratureError("singular exponent must lie in (0, 1)")
    p = 1.0 / (1.0 - s)

    def transformed(w):
        q = w**p
        jac = p * w ** (p - 1.0)
        res = f(q) if offset_arg else f(1.0 + q)
        if isinstance(res, tuple):
            return res[0] * jac, res[1] * jac
        return res * jac

    # Start marginally above zero so q never underflows to an exact 0 (the
    # omitted mass is O(w_lo) times a bounded transformed integrand).
    w_lo = 1e-290 ** (1.0 - s)
    w_pts = [w_lo, (R - 1.0) ** (1.0 - s)]
    if breakpoints is not None:
        w_pts.extend(
            (r - 1.0) ** (1.0 - s) for r in breakpoints if 1.0 < r < R
        )
    value, err, n_evals, ok = _adaptive(
        transformed, np.array(sorted(set(w_pts))), spec.rel_tol, spec.abs_tol,
        spec.max_subdivisions,
    )
    return EvaluationReport(value, err, n_evals, ok)


def integrate_radial_unbounded(f, R, decay_exponent, spec):
    """Integrate f over (R, infinity) given |f(rho)| <= M rho^{-1-decay}.

    Maps (R, inf) onto (0, 1] via rho = R/v.  The mapped integrand behaves
    like v^{decay-1} at v = 0, so for decay < 1 a further power substitution
    v = z^{1/decay} flattens the endpoint.  No truncation is performed, hence
    no analytic remainder term enters the estimate.
    """
    if decay_exponent <= 0:
        raise QuadratureError("decay_exponent must be positive")
    if R <= 0:
        raise QuadratureError("R must be positive")

    def mapped(v):
        rho = R / v
        jac = R / v**2
        res = f(rho)
        if isinstance(res, tuple):
            return res[0] * jac, res[1] * jac
        return res * jac

    if decay_exponent >= 1.0:
        integrand = mapped
    else:
        q = 1.0 / decay_exponent

        def integrand(z):
            v = z**q
            jac = q * z ** (q - 1.0)
            res = mapped(v)
            if isinstance(res, tuple):
                return res[0] * jac, res[1] * jac
            return res * jac

    value, err, n_evals, ok = _adaptive(
        integrand, np.array([0.0, 0.5, 1.0]), spec.rel_tol, spec.abs_tol,
        spec.max_subdivisions,
    )
    return EvaluationReport(value, err, n_evals, ok)


def _frame(x_eval, d):
    """Orthonormal frame (u, v1[, v2]) with u pointing along x_eval.

    Falls back to the coordinate axes when x_eval = 0, so evaluation grids
    stay mirror-symmetric in the second coordinate for on-axis points.
    """
    x = np.asarray(x_eval, dtype=float)
    norm = float(np.linalg.norm(x))
    if norm == 0.0 or np.array_equal(x / norm, np.eye(d)[0]):
        return [np.eye(d)[i] for i in range(d)]
    u = x / norm
    basis = [u]
    for e in np.eye(d):
        w = e - sum(np.dot(e, b) * b for b in basis)
        n = np.linalg.norm(w)
        if n > 1e-12:
            basis.append(w / n)
        if len(basis) == d:
            break
    return basis


def _graded_scales(scale, upper, factor):
    out = []
    v = scale
    while v < upper:
        out.append(v)
        v *= factor
    return out


def _inner_spec(spec):
    return QuadratureSpec(
        rel_tol=max(spec.rel_tol * 0.05, 1e-13),
        abs_tol=spec.abs_tol * 0.05,
        max_subdivisions=max(512, spec.max_subdivisions // 8),
        singular_exponent=spec.singular_exponent,
        near_boundary_split_factor=spec.near_boundary_split_factor,
    )


def integrate_exterior_ball(
    F,
    d,
    x_eval,
    s,
    spec,
    support_radius=None,
    decay_exponent=None,
    radial_breakpoints=(),
    angular_breakpoints=None,
    axisymmetric=False,
):
    """Integrate F over the exterior of the unit ball in dimension d.

    F takes an (n, d) array of points and returns n values; it is assumed to
    carry the boundary weight (|y|^2-1)^{-s} near the unit sphere.  The radial
    direction uses the singularity-removing substitution with a panel grading
    keyed to the distance 1-|x_eval| (the Poisson-kernel concentration
    scale); the angular direction is an adaptive rule on folded half-ranges,
    so mirror-symmetric integrands are resolved on exactly mirrored nodes.

    Either ``support_radius`` (F vanishes beyond it) or ``decay_exponent``
    (|rho^{d-1} x angular-average| <= M rho^{-1-decay}) must describe the far
    field.
    """
    if d not in (1, 2, 3):
        raise QuadratureError("only d in {1, 2, 3} is supported")
    x = np.atleast_1d(np.asarray(x_eval, dtype=float))
    if x.size != d:
        raise QuadratureError("x_eval dimension mismatch")
    delta = 1.0 - float(np.linalg.norm(x))
    if delta <= 0.0:
        raise QuadratureError("x_eval must lie in the open unit ball")
    if support_radius is None and decay_exponent is None:
        raise QuadratureError(
            "declare either support_radius or decay_exponent for the far field"
        )

    K = spec.near_boundary_split_factor
    frame = _frame(x, d)
    inner = _inner_spec(spec)
    evals = [0]
    wants_offset = getattr(F, "accepts_norm2m1", False)

    def call_F(points, q):
        # q is the exact boundary offset |y| - 1 shared by the batch; kernel
        # integrands use it to form |y|^2 - 1 = q(2+q) without cancellation.
        evals[0] += points.shape[0]
        if wants_offset:
            return np.asarray(F(points, q * (2.0 + q)), dtype=float)
        return np.asarray(F(points), dtype=float)

    if d == 1:
        def radial_q(q):
            rho = 1.0 + q
            out = np.empty(q.size)
            for i in range(q.size):
                pts = np.array([[rho[i]], [-rho[i]]])
                vals = call_F(pts, float(q[i]))
                out[i] = vals[0] + vals[1]
            return out
    elif d == 2:
        u, v1 = frame

        def angular(q):
            rho = 1.0 + q
            scale = max(delta, q, 1e-14)
            bps = _graded_scales(scale, np.pi, 4.0)
            if angular_breakpoints is not None:
                bps = list(bps) + [
                    p for p in angular_breakpoints(rho) if 0.0 < p < np.pi
                ]

            def psi(phi):
                radial_part = rho * np.cos(phi)
                trans = rho * np.sin(phi)
                y = radial_part[:, None] * u[None, :] + trans[:, None] * v1[None, :]
                ym = radial_part[:, None] * u[None, :] - trans[:, None] * v1[None, :]
                return call_F(y, q) + call_F(ym, q)

            rep = integrate_1d(psi, 0.0, np.pi, inner, breakpoints=bps)
            return rep.value, rep.error_estimate

        def radial_q(q):
            out = np.empty(q.size)
            errs = np.empty(q.size)
            for i in range(q.size):
                val, err = angular(float(q[i]))
                out[i] = (1.0 + q[i]) * val
                errs[i] = (1.0 + q[i]) * err
            return out, errs
    else:
        u, v1, v2 = frame

        def latitude(q):
            rho = 1.0 + q
            scale = max(delta, q, 1e-14)
            bps = _graded_scales(scale, np.pi, 4.0)
            if angular_breakpoints is not None:
                bps = list(bps) + [
                    p for p in angular_breakpoints(rho) if 0.0 < p < np.pi
                ]

            if axisymmetric:
                def psi(phi):
                    radial_part = rho * np.cos(phi)
                    trans = rho * np.sin(phi)
                    y = (
                        radial_part[:, None] * u[None, :]
                        + trans[:, None] * v1[None, :]
                    )
                    return 2.0 * np.pi * np.sin(phi) * call_F(y, q)

                rep = integrate_1d(psi, 0.0, np.pi, inner, breakpoints=bps)
                return rep.value, rep.error_estimate

            inner2 = _inner_spec(inner)

            def psi(phi):
                vals = np.empty(phi.size)
                errs = np.empty(phi.size)
                for j, p in enumerate(phi):
                    sin_p, cos_p = np.sin(p), np.cos(p)

                    def lon(alpha):
                        trans = rho * sin_p
                        axis_part = rho * cos_p
                        y = (
                            axis_part * u[None, :]
                            + (trans * np.cos(alpha))[:, None] * v1[None, :]
                            + (trans * np.sin(alpha))[:, None] * v2[None, :]
                        )
                        ym = y.copy()
                        ym[:, 2] = -ym[:, 2]
                        return call_F(y, q) + call_F(ym, q)

                    rep = integrate_1d(lon, 0.0, np.pi, inner2)
                    vals[j] = sin_p * rep.value
                    errs[j] = sin_p * rep.error_estimate
                return vals, errs

            lat_val, lat_err, _, _ = _adaptive(
                psi, _partition(0.0, np.pi, bps), inner.rel_tol, inner.abs_tol,
                inner.max_subdivisions,
            )
            return lat_val, lat_err

        def radial_q(q):
            out = np.empty(q.size)
            errs = np.empty(q.size)
            for i in range(q.size):
                val, err = latitude(float(q[i]))
                rho = 1.0 + q[i]
                out[i] = rho * rho * val
                errs[i] = rho * rho * err
            return out, errs

    # Radial decomposition: a singular-substituted near part graded toward
    # the boundary, then (if needed) an unbounded far part.
    r_near_end = 2.0 if support_radius is None else max(2.0, support_radius)
    graded = [1.0 + g for g in _graded_scales(delta, r_near_end - 1.0, K)]
    bps = sorted(set(graded) | {r for r in radial_breakpoints if 1.0 < r < r_near_end})

    near = integrate_radial_singular(
        radial_q, s, r_near_end, spec, breakpoints=bps, offset_arg=True
    )
    total = near
    if support_radius is None:
        def radial_far(rho):
            return radial_q(rho - 1.0)

        # The far field's error budget is relative to the whole integral, not
        # to its own (possibly tiny) value.
        far_spec = replace(
            spec, abs_tol=max(spec.abs_tol, 0.25 * spec.tolerance(near.value))
        )
        far = integrate_radial_unbounded(
            radial_far, r_near_end, decay_exponent, far_spec
        )
        total = total + far
    return EvaluationReport(
        total.value, total.error_estimate, evals[0], total.converged
    )
