"""Modulus-of-continuity algebra.

Moduli are nondecreasing functions on [0, infinity).  The transforms
implemented here are the Dini integral of a modulus, the solution modulus

    sigma(t) = t^s (1 + int_t^1 omega(r) / r^{1+s} dr),

its integral factor kappa(t) = sigma(t)/t^s, oscillation profiles of exterior
data, Darboux-bracketed Riemann-Stieltjes integration against nondecreasing
integrators, and sampled estimates of the interior and exterior generalized
Hoelder seminorms.

The log-type moduli t^a log^{-p}(e/t) are frozen to their t=1 log factor for
t > 1 so they stay nondecreasing on the whole half-line; every transform here
only probes (0, 1] where the formulas are the usual ones.
"""

import math
from dataclasses import dataclass

import numpy as np

from .quadrature import EvaluationReport, QuadratureSpec, integrate_1d


class InvalidModulusError(ValueError):
    """A purported modulus failed a monotonicity or positivity check."""


class BudgetExceededError(RuntimeError):
    """Quadrature budget exhausted; carries the partial report."""

    def __init__(self, message, partial_report):
        super().__init__(message)
        self.partial_report = partial_report


class ModulusFunction:
    """A modulus of continuity with optional closed-form weighted integrals.

    Construct via the classmethods: ``zero``, ``power``, ``power_log``,
    ``log_inverse``, ``table``, ``scaled``, ``custom``.
    """

    def __init__(self, kind, params, vanishes_at_zero, label):
        self.kind = kind
        self.params = params
        self.vanishes_at_zero = vanishes_at_zero
        self.label = label

    def __repr__(self):
        return f"ModulusFunction({self.label})"

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls):
        return cls("zero", {}, True, "0")

    @classmethod
    def power(cls, alpha):
        if alpha <= 0:
            raise InvalidModulusError("power exponent must be positive")
        return cls("power", {"alpha": alpha}, True, f"t^{alpha:g}")

    @classmethod
    def power_log(cls, a, p):
        """t^a * log^{-p}(e/t), the product of a power and a log factor."""
        if a <= 0:
            raise InvalidModulusError("power part must be positive")
        if p < 0:
            raise InvalidModulusError("log exponent must be nonnegative")
        return cls(
            "power_log", {"a": a, "p": p}, True,
            f"t^{a:g} log^-{p:g}(e/t)",
        )

    @classmethod
    def log_inverse(cls, p):
        """log^{-p}(e/t): positive for t > 0, tends to 0 at 0, omega(0+) = 0
        only in the limit; flagged as not vanishing at zero."""
        if p <= 0:
            raise InvalidModulusError("log exponent must be positive")
        return cls("log_inverse", {"p": p}, False, f"log^-{p:g}(e/t)")

    @classmethod
    def table(cls, points):
        """Piecewise-linear monotone interpolant, constant beyond the last
        breakpoint."""
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise InvalidModulusError("table needs at least two (t, value) rows")
        t, v = pts[:, 0], pts[:, 1]
        if np.any(np.diff(t) <= 0):
            raise InvalidModulusError("table abscissae must strictly increase")
        if np.any(np.diff(v) < 0) or v[0] < 0:
            raise InvalidModulusError("table values must be nondecreasing and >= 0")
        if t[0] != 0.0:
            raise InvalidModulusError("table must start at t = 0")
        return cls(
            "table", {"t": t, "v": v}, v[0] == 0.0,
            f"table[{len(t)} pts]",
        )

    @classmethod
    def scaled(cls, factor, base):
        if factor < 0:
            raise InvalidModulusError("scale factor must be nonnegative")
        return cls(
            "scaled", {"c": factor, "base": base}, base.vanishes_at_zero,
            f"{factor:g}*{base.label}",
        )

    @classmethod
    def custom(cls, fn, vanishes_at_zero=True, label="custom"):
        return cls("custom", {"fn": fn}, vanishes_at_zero, label)

    # -- evaluation ----------------------------------------------------------

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        if np.any(t < 0):
            raise InvalidModulusError("moduli are defined on t >= 0")
        out = self._eval(t)
        return float(out[0]) if scalar else out

    def _eval(self, t):
        k, p = self.kind, self.params
        if k == "zero":
            return np.zeros_like(t)
        if k == "power":
            return t ** p["alpha"]
        if k == "power_log":
            tc = np.minimum(t, 1.0)
            out = np.zeros_like(t)
            pos = t > 0
            out[pos] = t[pos] ** p["a"] * np.log(np.e / tc[pos]) ** (-p["p"])
            return out
        if k == "log_inverse":
            tc = np.minimum(t, 1.0)
            out = np.zeros_like(t)
            pos = t > 0
            out[pos] = np.log(np.e / tc[pos]) ** (-p["p"])
            return out
        if k == "table":
            return np.interp(t, p["t"], p["v"])
        if k == "scaled":
            return p["c"] * p["base"]._eval(t)
        return np.asarray(p["fn"](t), dtype=float)

    # -- closed-form weighted integrals on [t, 1] ----------------------------

    def dini_primitive(self, t):
        """int_t^1 omega(r)/r dr in closed form, or None."""
        if not 0.0 < t <= 1.0:
            raise ValueError("t must lie in (0, 1]")
        k, p = self.kind, self.params
        if k == "zero":
            return 0.0
        if k == "power":
            a = p["alpha"]
            return (1.0 - t**a) / a
        if k == "log_inverse":
            q = p["p"]
            L = math.log(math.e / t)
            if q == 1.0:
                return math.log(L)
            return (L ** (1.0 - q) - 1.0) / (1.0 - q)
        if k == "table":
            return self._table_weighted(t, 0.0)
        if k == "scaled":
            base = p["base"].dini_primitive(t)
            return None if base is None else p["c"] * base
        return None

    def dini_limit(self):
        """lim_{t->0+} int_t^1 omega(r)/r dr when available in closed form.

        Returns a finite value, math.inf for closed-form divergence, or None
        when no closed form exists.
        """
        k, p = self.kind, self.params
        if k == "zero":
            return 0.0
        if k == "power":
            return 1.0 / p["alpha"]
        if k == "log_inverse":
            q = p["p"]
            return 1.0 / (q - 1.0) if q > 1.0 else math.inf
        if k == "table":
            if not self.vanishes_at_zero:
                return math.inf
            return self._table_weighted(None, 0.0)
        if k == "scaled":
            base = p["base"].dini_limit()
            return None if base is None else p["c"] * base
        return None

    def weighted_primitive(self, t, s):
        """int_t^1 omega(r)/r^{1+s} dr in closed form, or None."""
        if not 0.0 < t <= 1.0:
            raise ValueError("t must lie in (0, 1]")
        if not 0.0 < s < 1.0:
            raise ValueError("s must lie in (0, 1)")
        k, p = self.kind, self.params
        if k == "zero":
            return 0.0
        if k == "power":
            a = p["alpha"]
            if a == s:
                return math.log(1.0 / t)
            return (1.0 - t ** (a - s)) / (a - s)
        if k == "power_log":
            if p["a"] == s:
                # omega(r)/r^{1+s} = log^{-p}(e/r)/r: same primitive as the
                # log_inverse Dini integrand.
                return ModulusFunction.log_inverse(p["p"]).dini_primitive(t)
            return None
        if k == "table":
            return self._table_weighted(t, s)
        if k == "scaled":
            base = p["base"].weighted_primitive(t, s)
            return None if base is None else p["c"] * base
        return None

    def _table_weighted(self, t, s):
        """Exact int_t^1 omega(r)/r^{1+s} dr for the piecewise-linear table
        (s = 0 gives the Dini integrand); t = None means the limit t -> 0."""
        knots = self.params["t"]
        vals = self.params["v"]
        lo = 0.0 if t is None else t
        total = 0.0
        edges = sorted(set([lo, 1.0]) | {k for k in knots if lo < k < 1.0})
        for a, b in zip(edges[:-1], edges[1:]):
            mid = 0.5 * (a + b)
            idx = np.searchsorted(knots, mid) - 1
            idx = min(max(idx, 0), len(knots) - 2)
            t0, t1 = knots[idx], knots[idx + 1]
            if mid > knots[-1]:
                slope, icpt = 0.0, vals[-1]
            else:
                slope = (vals[idx + 1] - vals[idx]) / (t1 - t0)
                icpt = vals[idx] - slope * t0
            # int (icpt + slope*r) / r^{1+s} dr on [a, b]
            if s == 0.0:
                if icpt != 0.0:
                    if a == 0.0:
                        return math.inf
                    total += icpt * math.log(b / a)
                total += slope * (b - a)
            else:
                if icpt != 0.0:
                    if a == 0.0:
                        return math.inf
                    total += icpt * (a ** (-s) - b ** (-s)) / s
                total += slope * (b ** (1.0 - s) - a ** (1.0 - s)) / (1.0 - s)
        return total

    def check_monotone(self, t_max=8.0, samples=512):
        t = np.concatenate([[0.0], np.geomspace(1e-12, t_max, samples)])
        v = self(t)
        if not np.all(np.isfinite(v)):
            raise InvalidModulusError("modulus is not finite on [0, 8]")
        if np.any(np.diff(v) < -1e-14 * max(1.0, v[-1])):
            raise InvalidModulusError("modulus is not nondecreasing")


def power_transform(omega, exponent):
    """The modulus t -> omega(t)^exponent (used for the 2s-Dini variant)."""
    k, p = omega.kind, omega.params
    if k == "zero":
        return ModulusFunction.zero()
    if k == "power":
        return ModulusFunction.power(p["alpha"] * exponent)
    if k == "power_log":
        return ModulusFunction.power_log(p["a"] * exponent, p["p"] * exponent)
    if k == "log_inverse":
        return ModulusFunction.log_inverse(p["p"] * exponent)
    return ModulusFunction.custom(
        lambda t: omega(t) ** exponent,
        vanishes_at_zero=omega.vanishes_at_zero,
        label=f"({omega.label})^{exponent:g}",
    )


# ---------------------------------------------------------------------------
# Dini integral with convergence decision
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiniReport:
    convergent: bool
    value: float | None
    error: float | None
    cutoffs: np.ndarray
    partials: np.ndarray
    increments: np.ndarray


#: Increment-decay ratio below which the partial integrals are declared
#: convergent (checked across the last four decades).
DINI_RATIO_THRESHOLD = 0.9


def _decade_integral(iota, lo, hi, tol):
    """int_lo^hi iota(t)/t dt via closed form or log-substituted quadrature."""
    plo = iota.dini_primitive(lo) if lo <= 1.0 else None
    phi = iota.dini_primitive(hi) if hi <= 1.0 else None
    if plo is not None and phi is not None:
        return plo - phi, 0.0
    # substitute t = e^{-x}: integral of iota(e^{-x}) over [log(1/hi), log(1/lo)]
    spec = QuadratureSpec(rel_tol=1e-12, abs_tol=tol * 1e-3, max_subdivisions=4000)
    rep = integrate_1d(lambda x: iota(np.exp(-x)), math.log(1.0 / hi),
                       math.log(1.0 / lo), spec)
    return rep.value, rep.error_estimate


def dini_integral(iota, lower_cutoffs=None, tol=1e-6):
    """Decide convergence of int_0^1 iota(t)/t dt and estimate its value.

    Partial integrals are taken down to each cutoff (default 10^-k for
    k = 1..12).  The decision rule is geometric decay of the per-decade
    increments: convergent iff every ratio among the last four increments is
    below ``DINI_RATIO_THRESHOLD``.  The convergent value extrapolates the
    remaining tail with a geometric model for fast decay and a fitted
    power-law model otherwise.
    """
    iota.check_monotone(t_max=1.0)
    if lower_cutoffs is None:
        cutoffs = np.array([10.0 ** (-k) for k in range(1, 13)])
    else:
        cutoffs = np.asarray(lower_cutoffs, dtype=float)
        if np.any(np.diff(cutoffs) >= 0) or np.any(cutoffs <= 0) or cutoffs[0] >= 1:
            raise ValueError("cutoffs must be a decreasing list in (0, 1)")

    edges = np.concatenate([[1.0], cutoffs])
    increments = np.empty(len(cutoffs))
    quad_err = 0.0
    for i in range(len(cutoffs)):
        inc, err = _decade_integral(iota, edges[i + 1], edges[i], tol)
        increments[i] = inc
        quad_err += err
    partials = np.cumsum(increments)

    scale = max(partials[-1], 1.0)
    tail_incs = increments[-4:]
    K = len(increments)
    if np.all(np.abs(tail_incs) <= 1e-14 * scale):
        convergent, ratios = True, np.zeros(3)
    else:
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = tail_incs[1:] / tail_incs[:-1]
        ratios = np.nan_to_num(ratios, nan=0.0, posinf=np.inf)
        convergent = bool(np.all(ratios < DINI_RATIO_THRESHOLD))
        if not convergent and np.all(ratios < 1.0):
            # Slowly decaying increments: discriminate algebraic decay
            # Delta_k ~ k^{-q}.  q > 1 sums; the geometric ratio test alone
            # would flip its answer for log-type moduli as the cutoff list
            # deepens, so the fitted exponent keeps the decision depth-stable.
            q = math.log(increments[-2] / increments[-1]) / math.log(K / (K - 1.0))
            convergent = q >= 1.2

    if not convergent:
        return DiniReport(False, None, None, cutoffs, partials, increments)

    last = increments[-1]
    if last <= 1e-14 * scale:
        tail = 0.0
    elif np.max(ratios) <= 0.7:
        r = float(ratios[-1])
        tail = last * r / (1.0 - r)
    else:
        # Algebraic decay Delta_k ~ c k^{-q}: fit q from the final ratio and
        # sum the remaining tail with a midpoint-corrected power-law model.
        q = math.log(increments[-2] / last) / math.log(K / (K - 1.0))
        q = max(q, 1.2)
        tail = last * K**q * (K + 0.5) ** (1.0 - q) / (q - 1.0)
    value = partials[-1] + tail
    error = quad_err + 0.25 * tail + 1e-12
    return DiniReport(True, value, error, cutoffs, partials, increments)


# ---------------------------------------------------------------------------
# sigma and kappa
# ---------------------------------------------------------------------------

def _weighted_tail(omega, s, t, tol):
    """int_t^1 omega(r)/r^{1+s} dr with error control; closed form if known."""
    closed = omega.weighted_primitive(t, s)
    if closed is not None:
        return closed, abs(closed) * 1e-15
    # substitute r = e^{-x}: integral of omega(e^{-x}) e^{sx} over [0, log(1/t)]
    x_hi = math.log(1.0 / t)
    bps = [float(k) * math.log(10.0) for k in range(1, 13) if k * math.log(10.0) < x_hi]
    if omega.kind == "table":
        bps += [
            -math.log(k) for k in omega.params["t"] if 0.0 < k < 1.0 and t < k
        ]
    spec = QuadratureSpec(rel_tol=1e-12, abs_tol=max(tol * 0.5, 1e-14),
                          max_subdivisions=8000)
    rep = integrate_1d(lambda x: omega(np.exp(-x)) * np.exp(s * x), 0.0, x_hi,
                       spec, breakpoints=bps)
    if not rep.converged:
        raise BudgetExceededError(
            "weighted modulus integral did not converge", rep
        )
    return rep.value, rep.error_estimate


def sigma(omega, s, t, tol=1e-9):
    """The solution modulus sigma(t) = t^s (1 + int_t^1 omega(r)/r^{1+s} dr).

    For t >= 1 the integral term is empty and sigma(t) = t^s exactly.
    """
    if t <= 0 or tol <= 0:
        raise ValueError("need t > 0 and tol > 0")
    if not 0.0 < s < 1.0:
        raise ValueError("s must lie in (0, 1)")
    ts = t**s
    if t >= 1.0:
        return EvaluationReport(ts, 0.0, 0, True)
    integral, err = _weighted_tail(omega, s, t, tol / ts)
    return EvaluationReport(ts * (1.0 + integral), ts * err, 0, True)


def kappa(omega, s, t, tol=1e-9):
    """kappa(t) = 1 + int_t^1 omega(r)/r^{1+s} dr  (= sigma(t)/t^s for t <= 1);
    nonincreasing in t, identically 1 for t >= 1."""
    if t <= 0 or tol <= 0:
        raise ValueError("need t > 0 and tol > 0")
    if t >= 1.0:
        return 1.0
    integral, _ = _weighted_tail(omega, s, t, tol)
    return 1.0 + integral


# ---------------------------------------------------------------------------
# Oscillation profiles
# ---------------------------------------------------------------------------

@dataclass
class OscillationProfile:
    """Monotone profile xi(t) = max |g(z) - g(w)| over exterior w within
    distance t of the base point; sampled values are lower bounds."""

    base_point: np.ndarray
    t: np.ndarray
    xi: np.ndarray
    sample_count: int
    closed_form: object = None

    def __call__(self, tq):
        if self.closed_form is not None:
            return self.closed_form(tq)
        return np.interp(tq, self.t, self.xi)


def oscillation_profile(g, z, t_grid, sphere_samples=96, seed=0):
    """Sampled oscillation profile of an exterior datum about z.

    Uses the datum's closed-form profile when it provides one for this base
    point; otherwise maximizes |g(z) - g(w)| over sampled exterior points w
    with |z - w| <= t, with a running maximum enforcing monotonicity.
    """
    z = np.atleast_1d(np.asarray(z, dtype=float))
    t_grid = np.asarray(sorted(t_grid), dtype=float)
    d = g.dimension
    closed = g.oscillation_closed_form(z)
    if closed is not None:
        return OscillationProfile(z, t_grid, np.asarray(closed(t_grid)), 0, closed)

    rng = np.random.default_rng(seed)
    gz = float(g(z[None, :])[0])
    if d == 1:
        dirs = np.array([[1.0], [-1.0]])
    else:
        dirs = rng.standard_normal((sphere_samples, d))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        dirs = np.concatenate([dirs, np.eye(d), -np.eye(d)])
    fracs = np.concatenate([np.linspace(0.02, 1.0, 25), [0.999, 1.0]])
    xi = np.empty(len(t_grid))
    best = 0.0
    count = 0
    for i, t in enumerate(t_grid):
        radii = t * fracs
        w = z[None, None, :] + radii[:, None, None] * dirs[None, :, :]
        w = w.reshape(-1, d)
        exterior = np.linalg.norm(w, axis=1) >= 1.0
        w = w[exterior]
        if w.size:
            vals = np.abs(np.asarray(g(w), dtype=float) - gz)
            best = max(best, float(vals.max()))
        count += len(w)
        xi[i] = best
    return OscillationProfile(z, t_grid, xi, count, None)


# ---------------------------------------------------------------------------
# Riemann-Stieltjes integration
# ---------------------------------------------------------------------------

def stieltjes_integral(f, xi, t_max, tol=1e-6, initial_panels=16,
                       max_refinements=60, mono_slack=None):
    """Darboux-bracketed Stieltjes integral int_0^{t_max} f(t) d xi(t).

    f must be nonincreasing and xi nondecreasing on [0, t_max]; the upper and
    lower Darboux-Stieltjes sums then bracket the true value and the bracket
    is nested under refinement.  Returns the bracket midpoint with the
    half-width as the error estimate.
    """
    if t_max <= 0 or tol <= 0:
        raise ValueError("need t_max > 0 and tol > 0")
    cache_f, cache_xi = {}, {}

    def fv(t):
        if t not in cache_f:
            cache_f[t] = float(f(t))
        return cache_f[t]

    def xv(t):
        if t not in cache_xi:
            cache_xi[t] = float(xi(t))
        return cache_xi[t]

    # geometric points resolve integrators that vary on log scales near 0
    pts = set(np.linspace(0.0, t_max, initial_panels + 1))
    pts |= {t_max * 10.0 ** (-k) for k in range(1, 7)}
    pts = sorted(pts)

    for _ in range(max_refinements + 1):
        fs = np.array([fv(t) for t in pts])
        xs = np.array([xv(t) for t in pts])
        slack = mono_slack
        if slack is None:
            slack = 1e-9 * max(1.0, np.abs(fs).max(), np.abs(xs).max())
        if np.any(np.diff(fs) > slack):
            raise InvalidModulusError("integrand is not nonincreasing")
        if np.any(np.diff(xs) < -slack):
            raise InvalidModulusError("integrator is not nondecreasing")
        dxi = np.diff(xs)
        upper = float(np.sum(fs[:-1] * dxi))
        lower = float(np.sum(fs[1:] * dxi))
        if upper - lower <= 2.0 * tol:
            return EvaluationReport(
                0.5 * (upper + lower), 0.5 * (upper - lower), len(pts), True
            )
        # Bisect only the intervals holding more than their share of the
        # bracket width; the bracket is still nested since points are only
        # ever added.
        gaps = (fs[:-1] - fs[1:]) * dxi
        thresh = (upper - lower) / (2.0 * gaps.size)
        mids = [
            0.5 * (a + b)
            for a, b, g in zip(pts[:-1], pts[1:], gaps)
            if g > thresh or g == gaps.max()
        ]
        pts = sorted(set(pts) | set(mids))
    return EvaluationReport(
        0.5 * (upper + lower), 0.5 * (upper - lower), len(pts), False
    )


def stieltjes_brackets(f, xi, t_max, levels, initial_panels=16):
    """(upper, lower) Darboux sums per refinement level; used to check the
    nesting property."""
    pts = sorted(set(np.linspace(0.0, t_max, initial_panels + 1)))
    out = []
    for _ in range(levels):
        fs = np.array([float(f(t)) for t in pts])
        xs = np.array([float(xi(t)) for t in pts])
        dxi = np.diff(xs)
        out.append((float(np.sum(fs[:-1] * dxi)), float(np.sum(fs[1:] * dxi))))
        mids = [0.5 * (a + b) for a, b in zip(pts[:-1], pts[1:])]
        pts = sorted(set(pts) | set(mids))
    return out


# ---------------------------------------------------------------------------
# Sampled generalized Hoelder seminorms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HoelderEstimate:
    """A sampled lower bound for a (generalized) Hoelder seminorm."""

    seminorm: float
    modulus: ModulusFunction
    pair_count: int
    max_pair: tuple


def _pairwise_max(points, values, denominators):
    """Max ratio |v_i - v_j| / den(i, j) over all pairs; den is a callable on
    index arrays."""
    n = len(points)
    ii, jj = np.triu_indices(n, k=1)
    num = np.abs(values[ii] - values[jj])
    den = denominators(ii, jj)
    ratios = np.full(num.shape, 0.0)
    ok = den > 0.0
    ratios[ok] = num[ok] / den[ok]
    ratios[~ok & (num > 0)] = np.inf
    k = int(np.argmax(ratios))
    return float(ratios[k]), (points[ii[k]], points[jj[k]]), len(ii)


def seminorm_ext(g, omega, sample_pairs=20000, seed=0, max_radius=None):
    """Sampled exterior seminorm sup |g(y)-g(z)| / omega(|y-z| + d_y + d_z).

    Samples are stratified toward the unit sphere (radii 1 + 10^{-k}); the
    result is a lower bound achieved by the reported pair.
    """
    rng = np.random.default_rng(seed)
    d = g.dimension
    n = max(8, int(math.isqrt(2 * sample_pairs)) + 1)
    if max_radius is None:
        max_radius = g.support_radius + 1.0 if g.support_radius else 8.0
    shell_radii = 1.0 + np.concatenate([
        10.0 ** (-np.arange(0.0, 7.0, 0.5)),
        np.linspace(0.05, max_radius - 1.0, 12),
    ])
    radii = rng.choice(shell_radii, size=n)
    if d == 1:
        signs = rng.choice([-1.0, 1.0], size=n)
        pts = (radii * signs)[:, None]
    else:
        dirs = rng.standard_normal((n, d))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        pts = radii[:, None] * dirs
    vals = np.asarray(g(pts), dtype=float)
    dist_bdry = np.linalg.norm(pts, axis=1) - 1.0

    def den(ii, jj):
        sep = np.linalg.norm(pts[ii] - pts[jj], axis=1)
        return np.asarray(omega(sep + dist_bdry[ii] + dist_bdry[jj]))

    best, pair, count = _pairwise_max(pts, vals, den)
    return HoelderEstimate(best, omega, count, pair)


def seminorm_interior(u, center, radius, omega, sample_pairs=20000, seed=0):
    """Sampled interior seminorm sup |u(x)-u(y)| / omega(|x-y|) over a ball."""
    rng = np.random.default_rng(seed)
    center = np.atleast_1d(np.asarray(center, dtype=float))
    d = center.size
    n = max(8, int(math.isqrt(2 * sample_pairs)) + 1)
    raw = rng.standard_normal((n, d))
    raw /= np.linalg.norm(raw, axis=1, keepdims=True)
    rad = radius * rng.random(n) ** (1.0 / d)
    pts = center[None, :] + rad[:, None] * raw
    pts[0] = center
    vals = np.asarray(u(pts), dtype=float)

    def den(ii, jj):
        sep = np.linalg.norm(pts[ii] - pts[jj], axis=1)
        return np.asarray(omega(sep))

    best, pair, count = _pairwise_max(pts, vals, den)
    return HoelderEstimate(best, omega, count, pair)
