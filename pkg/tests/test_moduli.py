"""Moduli of continuity, Dini integrals, sigma/kappa, Stieltjes, seminorms."""

import math

import numpy as np
import pytest

from fraclab.moduli import (
    InvalidModulusError,
    ModulusFunction,
    dini_integral,
    kappa,
    oscillation_profile,
    power_transform,
    seminorm_ext,
    seminorm_interior,
    sigma,
    stieltjes_brackets,
    stieltjes_integral,
)
from fraclab.exterior_data import constant_datum, halfline_modulus_datum


def random_table_modulus(rng, n_max=8):
    n = int(rng.integers(3, n_max + 1))
    knots = np.concatenate([[0.0], np.sort(rng.uniform(0.01, 4.0, n - 1))])
    incs = np.concatenate([[0.0], rng.uniform(0.0, 0.5, n - 1)])
    return ModulusFunction.table(np.column_stack([knots, np.cumsum(incs)]))


class TestModulusFunction:
    def test_power_eval(self):
        om = ModulusFunction.power(0.5)
        assert om(0.25) == 0.5
        assert om(0.0) == 0.0

    def test_log_inverse_flagged_nonvanishing(self):
        om = ModulusFunction.log_inverse(1.0)
        assert not om.vanishes_at_zero
        assert om(1.0) == 1.0
        assert om(math.exp(-1.0)) == 0.5

    def test_log_types_frozen_beyond_one(self):
        om = ModulusFunction.log_inverse(2.0)
        assert om(3.0) == om(1.0)
        pl = ModulusFunction.power_log(0.5, 1.0)
        assert pl(4.0) == 2.0 * pl(1.0)

    def test_table_is_piecewise_linear_and_clamped(self):
        om = ModulusFunction.table([[0.0, 0.0], [1.0, 2.0], [2.0, 3.0]])
        assert om(0.5) == 1.0
        assert om(5.0) == 3.0

    def test_table_rejects_decreasing_values(self):
        with pytest.raises(InvalidModulusError):
            ModulusFunction.table([[0.0, 1.0], [1.0, 0.5]])

    def test_table_rejects_nonzero_start_abscissa(self):
        with pytest.raises(InvalidModulusError):
            ModulusFunction.table([[0.5, 0.0], [1.0, 1.0]])

    def test_rejects_negative_argument(self):
        with pytest.raises(InvalidModulusError):
            ModulusFunction.power(0.5)(-0.1)

    def test_monotonicity_check_catches_custom_decrease(self):
        bad = ModulusFunction.custom(lambda t: 1.0 / (1.0 + t))
        with pytest.raises(InvalidModulusError):
            bad.check_monotone()

    def test_power_transform_on_closed_forms(self):
        om = power_transform(ModulusFunction.log_inverse(1.0), 1.5)
        assert om.kind == "log_inverse"
        assert om.params["p"] == 1.5
        om2 = power_transform(ModulusFunction.power(0.5), 2.0)
        assert om2.params["alpha"] == 1.0

    def test_table_weighted_integral_matches_quadrature(self):
        om = ModulusFunction.table([[0.0, 0.0], [0.3, 0.2], [1.5, 0.9]])
        s, t = 0.5, 0.05
        closed = om.weighted_primitive(t, s)
        r = np.linspace(t, 1.0, 2_000_001)
        ref = np.trapezoid(om(r) / r ** (1.0 + s), r)
        assert abs(closed - ref) < 1e-8


class TestDiniIntegral:
    def test_log_squared_oracle(self):
        # substitution u = log(e/t): int_1^inf u^{-2} du = 1
        rep = dini_integral(ModulusFunction.log_inverse(2.0))
        assert rep.convergent
        assert abs(rep.value - 1.0) <= 1e-3

    def test_zero_modulus(self):
        rep = dini_integral(ModulusFunction.zero())
        assert rep.convergent
        assert rep.value == 0.0

    def test_log_inverse_divergent(self):
        rep = dini_integral(ModulusFunction.log_inverse(1.0))
        assert not rep.convergent
        # increments follow loglog growth: slowly decaying, all positive
        assert np.all(rep.increments > 0)

    def test_power_modulus_value(self):
        rep = dini_integral(ModulusFunction.power(0.5))
        assert rep.convergent
        assert abs(rep.value - 2.0) <= 1e-6

    def test_decision_stable_under_depth_doubling(self):
        for om, expect in [
            (ModulusFunction.log_inverse(2.0), True),
            (ModulusFunction.log_inverse(1.0), False),
            (ModulusFunction.power(0.3), True),
        ]:
            shallow = dini_integral(om)
            deep = dini_integral(
                om, lower_cutoffs=[10.0 ** (-k) for k in range(1, 25)]
            )
            assert shallow.convergent == deep.convergent == expect

    def test_rejects_decreasing_iota(self):
        bad = ModulusFunction.custom(lambda t: 2.0 - t)
        with pytest.raises(InvalidModulusError):
            dini_integral(bad)


class TestSigmaKappa:
    def test_power_closed_form(self):
        s = 0.5
        rep = sigma(ModulusFunction.power(s), s, 0.1)
        exact = 0.1**s * (1.0 + math.log(10.0))
        assert abs(rep.value - exact) <= 1e-6 * exact

    def test_zero_modulus_gives_ts(self):
        rep = sigma(ModulusFunction.zero(), 0.5, 0.25)
        assert rep.value == 0.5

    def test_general_power_closed_form(self):
        s, alpha, t = 0.5, 0.9, 0.01
        rep = sigma(ModulusFunction.power(alpha), s, t)
        exact = t**s * (1.0 + (1.0 - t ** (alpha - s)) / (alpha - s))
        assert abs(rep.value - exact) <= 1e-9 * exact

    def test_t_above_one_is_ts(self):
        rep = sigma(ModulusFunction.power(0.3), 0.5, 2.0)
        assert rep.value == 2.0**0.5
        assert rep.error_estimate == 0.0

    def test_kappa_examples(self):
        assert kappa(ModulusFunction.zero(), 0.5, 0.3) == 1.0
        assert abs(kappa(ModulusFunction.power(0.5), 0.5, math.exp(-1.0)) - 2.0) < 1e-9
        assert kappa(ModulusFunction.power(0.5), 0.5, 1.5) == 1.0

    def test_custom_modulus_falls_back_to_quadrature(self):
        om_closed = ModulusFunction.power(0.7)
        om_custom = ModulusFunction.custom(lambda t: np.asarray(t) ** 0.7)
        a = sigma(om_closed, 0.4, 0.05).value
        b = sigma(om_custom, 0.4, 0.05).value
        assert abs(a - b) <= 1e-8 * a

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            sigma(ModulusFunction.power(0.5), 0.5, 0.0)
        with pytest.raises(ValueError):
            sigma(ModulusFunction.power(0.5), 1.5, 0.5)


class TestLemmaProperties:
    """Property suites for the sigma-transform inequalities."""

    def test_scaling_inequality_random_pairs(self, rng):
        # sigma(a t) <= a sigma(t) for a >= 1 (10^4 random (a, t))
        s_vals = [0.25, 0.5, 0.75]
        oms = [ModulusFunction.power(0.6), ModulusFunction.power_log(0.5, 1.0)] + [
            random_table_modulus(rng) for _ in range(4)
        ]
        count = 0
        for om in oms:
            for s in s_vals:
                a = 1.0 + rng.random(600) * 5.0
                t = 10.0 ** rng.uniform(-4.0, 0.3, 600)
                for ai, ti in zip(a, t):
                    lhs = sigma(om, s, ai * ti).value
                    rhs = ai * sigma(om, s, ti).value
                    assert lhs <= rhs * (1.0 + 1e-9) + 1e-12
                    count += 1
        assert count >= 10000

    def test_modulus_dominated_by_sigma(self, rng):
        # omega(t) <= (2 omega(2) v 2) sigma(t) on [0, 2]
        for _ in range(200):
            om = random_table_modulus(rng)
            s = float(rng.choice([0.25, 0.5, 0.75]))
            C = max(2.0 * om(2.0), 2.0)
            for t in rng.uniform(1e-4, 2.0, 50):
                assert om(t) <= C * sigma(om, s, t).value * (1.0 + 1e-9) + 1e-12

    def test_kappa_nonincreasing_pairwise(self, rng):
        # the pairwise embedding inequality reduces to kappa(t1) >= kappa(t2)
        # for t1 <= t2 (kappa nonincreasing); 10^4 random pairs
        oms = [ModulusFunction.power(0.5), random_table_modulus(rng),
               random_table_modulus(rng), ModulusFunction.power_log(0.5, 2.0)]
        s = 0.5
        checked = 0
        for om in oms:
            ts = np.sort(10.0 ** rng.uniform(-4.0, 0.5, 72))
            ks = [kappa(om, s, float(t)) for t in ts]
            for i in range(len(ts)):
                for j in range(i + 1, len(ts)):
                    assert ks[i] >= ks[j] - 1e-9 * max(1.0, ks[i])
                    checked += 1
        assert checked >= 10000


class TestOscillationProfile:
    def test_constant_datum_profile_is_zero(self):
        g = constant_datum(3.0, 2)
        prof = oscillation_profile(g, [1.0, 0.0], np.linspace(0.0, 2.0, 9))
        assert np.all(np.asarray(prof(np.linspace(0.0, 2.0, 9))) == 0.0)

    def test_halfline_closed_form(self):
        om = ModulusFunction.power(0.5)
        g = halfline_modulus_datum(om)
        prof = oscillation_profile(g, [1.0], np.linspace(0.0, 3.0, 13))
        assert abs(prof(0.25) - om(0.25)) < 1e-14
        assert abs(prof(2.5) - om(2.0)) < 1e-14

    def test_sampled_profile_is_monotone_lower_bound(self):
        om = ModulusFunction.power(0.5)
        g = halfline_modulus_datum(om)
        # off the closed-form base point: sampled path
        prof = oscillation_profile(g, [1.5], np.linspace(0.0, 2.0, 21))
        vals = np.asarray(prof(np.linspace(0.0, 2.0, 21)))
        assert np.all(np.diff(vals) >= -1e-14)
        assert prof.sample_count > 0


class TestStieltjes:
    def test_total_variation_of_constant_integrand(self):
        om = ModulusFunction.power(0.5)
        rep = stieltjes_integral(lambda t: 1.0, lambda t: om(t), 2.0, tol=1e-9)
        assert abs(rep.value - om(2.0)) <= rep.error_estimate + 1e-9

    def test_indicator_integrand(self):
        a = 0.6
        f = lambda t: 1.0 if t < a else 0.0
        xi = lambda t: min(t, 1.0)
        rep = stieltjes_integral(f, xi, 2.0, tol=1e-6)
        assert abs(rep.value - a) <= rep.error_estimate + 1e-6

    def test_against_dense_riemann_stieltjes_sum(self):
        c, s = 0.3, 0.5
        f = lambda t: min(1.0, (c / t) ** s) if t > 0 else 1.0
        xi = lambda t: min(t, 1.0)
        rep = stieltjes_integral(f, xi, 2.0, tol=1e-7)
        ts = np.linspace(0.0, 2.0, 1_000_001)
        fs = np.array([f(t) for t in ts])
        xs = np.minimum(ts, 1.0)
        ref = float(np.sum(0.5 * (fs[:-1] + fs[1:]) * np.diff(xs)))
        assert abs(rep.value - ref) < 5e-6

    def test_brackets_are_nested(self):
        f = lambda t: 1.0 / (1.0 + t)
        xi = lambda t: math.sqrt(t)
        brackets = stieltjes_brackets(f, xi, 1.0, levels=6)
        for (u1, l1), (u2, l2) in zip(brackets[:-1], brackets[1:]):
            assert u2 <= u1 + 1e-14
            assert l2 >= l1 - 1e-14
        for u, l in brackets:
            assert u >= l

    def test_rejects_nonmonotone_integrand(self):
        with pytest.raises(InvalidModulusError):
            stieltjes_integral(lambda t: math.sin(5.0 * t), lambda t: t, 2.0)


class TestSeminorms:
    def test_constant_exterior_function(self):
        g = constant_datum(5.0, 2)
        est = seminorm_ext(g, ModulusFunction.power(0.5), sample_pairs=2000)
        assert est.seminorm == 0.0

    def test_radial_modulus_profile_bounded_by_one(self):
        om = ModulusFunction.power(0.5)
        g = halfline_modulus_datum(om)
        est = seminorm_ext(g, om, sample_pairs=20000, seed=3)
        # |g(y)-g(z)| <= omega(|y-z| + d_y + d_z) for this construction
        assert est.seminorm <= 1.0 + 1e-9

    def test_interior_linear_function_slope(self):
        u = lambda pts: 2.0 * pts[:, 0]
        est = seminorm_interior(u, [0.0, 0.0], 0.5, ModulusFunction.power(1.0),
                                sample_pairs=20000, seed=1)
        assert 1.8 <= est.seminorm <= 2.0 + 1e-9

    def test_interior_zero_function(self):
        u = lambda pts: np.zeros(pts.shape[0])
        est = seminorm_interior(u, [0.0], 0.5, ModulusFunction.power(0.5))
        assert est.seminorm == 0.0

    def test_deterministic_given_seed(self):
        om = ModulusFunction.power(0.5)
        g = halfline_modulus_datum(om)
        a = seminorm_ext(g, om, sample_pairs=5000, seed=9)
        b = seminorm_ext(g, om, sample_pairs=5000, seed=9)
        assert a.seminorm == b.seminorm
