"""Poisson kernel, ball solutions, model solutions, and the boundary check."""

import math

import numpy as np
import pytest

from fraclab.ball_poisson import (
    BallProblem,
    DomainError,
    PoissonKernel,
    harmonicity_check,
    interior_to_boundary_check,
    poisson_kernel_eval,
    solve,
    solve_vt,
)
from fraclab.exterior_data import (
    constant_datum,
    halfline_modulus_datum,
    radial_indicator_datum,
    sign_changing_datum,
)
from fraclab.moduli import ModulusFunction


class TestKernel:
    def test_normalization_d1_half(self):
        assert abs(PoissonKernel(1, 0.5).normalization - 1.0 / math.pi) < 1e-16

    def test_normalization_lower_bound_d1(self):
        for s in (0.1, 0.3, 0.5, 0.7, 0.9):
            assert PoissonKernel(1, s).normalization >= s * (1.0 - s) / math.pi

    def test_point_value_d1(self):
        # (1/pi) * ((1 - 0) / (4 - 1))^{1/2} / |2 - 0| = 1/(2 pi sqrt(3))
        val = poisson_kernel_eval(PoissonKernel(1, 0.5), [0.0], [2.0])
        assert abs(val - 1.0 / (2.0 * math.pi * math.sqrt(3.0))) < 1e-16
        assert abs(val - 0.09189) < 5e-6

    def test_formula_at_random_points(self, rng):
        k = PoissonKernel(2, 0.3)
        x = np.array([0.2, -0.1])
        y = rng.uniform(-3.0, 3.0, size=(200, 2))
        y = y[np.linalg.norm(y, axis=1) > 1.001]
        got = poisson_kernel_eval(k, x, y)
        ny2 = np.einsum("ij,ij->i", y, y)
        d2 = np.einsum("ij,ij->i", y - x, y - x)
        expect = (
            k.normalization
            * ((1.0 - 0.05) / (ny2 - 1.0)) ** 0.3
            / d2
        )
        np.testing.assert_allclose(got, expect, rtol=1e-13)

    def test_rotation_symmetry_d2(self):
        k = PoissonKernel(2, 0.6)
        th = 0.7
        R = np.array([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
        x = np.array([0.3, 0.4])
        y = np.array([1.5, -0.8])
        a = poisson_kernel_eval(k, x, y)
        b = poisson_kernel_eval(k, R @ x, R @ y)
        assert abs(a - b) < 1e-15

    def test_domain_errors(self):
        k = PoissonKernel(1, 0.5)
        with pytest.raises(DomainError):
            poisson_kernel_eval(k, [1.0], [2.0])
        with pytest.raises(DomainError):
            poisson_kernel_eval(k, [0.0], [0.5])
        with pytest.raises(DomainError):
            PoissonKernel(4, 0.5)
        with pytest.raises(DomainError):
            PoissonKernel(2, 1.0)

    def test_problem_validates_growth(self):
        from fraclab.exterior_data import ExteriorDatum

        g = ExteriorDatum(
            eval=lambda pts: np.sqrt(np.linalg.norm(pts, axis=1)),
            dimension=2,
            support_radius=None,
            growth_exponent=0.5,
            boundary_bound=1.0,
        )
        # |y|^{1/2} growth outpaces the kernel decay when 2s <= 1/2
        with pytest.raises(DomainError):
            BallProblem(PoissonKernel(2, 0.2), g)

    def test_problem_validates_dimension(self):
        with pytest.raises(DomainError):
            BallProblem(PoissonKernel(1, 0.5), sign_changing_datum(0.5, 2))


class TestSolve:
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_constant_datum_reproduced(self, d, spec):
        problem = BallProblem(PoissonKernel(d, 0.5), constant_datum(1.0, d))
        x = np.zeros(d)
        x[0] = 0.4
        rep = solve(problem, x, spec)
        assert abs(rep.value - 1.0) <= 1e-7

    def test_linearity_in_datum(self, spec):
        k = PoissonKernel(1, 0.5)
        u1 = solve(BallProblem(k, constant_datum(1.0, 1)), [0.3], spec)
        u2 = solve(BallProblem(k, constant_datum(2.5, 1)), [0.3], spec)
        assert abs(u2.value - 2.5 * u1.value) <= 2.5 * (
            u1.error_estimate + u2.error_estimate
        ) + 1e-12

    def test_odd_datum_cancels_on_axis(self, spec):
        problem = BallProblem(PoissonKernel(2, 0.5), sign_changing_datum(0.5, 2))
        rep = solve(problem, [0.5, 0.0], spec)
        assert rep.value == 0.0

    def test_positive_datum_gives_positive_solution(self, spec):
        problem = BallProblem(
            PoissonKernel(1, 0.5), radial_indicator_datum(0.5, 1)
        )
        rep = solve(problem, [0.0], spec)
        assert 0.0 < rep.value < 1.0

    def test_comparison_with_full_mass(self, spec):
        # indicator datum <= 1 everywhere, so its solution sits below 1
        k = PoissonKernel(2, 0.5)
        part = solve(BallProblem(k, radial_indicator_datum(0.5, 2)), [0.2, 0.1], spec)
        full = solve(BallProblem(k, constant_datum(1.0, 2)), [0.2, 0.1], spec)
        assert part.value <= full.value + part.error_estimate + full.error_estimate

    def test_rejects_exterior_point(self, spec):
        problem = BallProblem(PoissonKernel(1, 0.5), constant_datum(1.0, 1))
        with pytest.raises(DomainError):
            solve(problem, [1.0], spec)


class TestModelSolutions:
    def test_t_zero_is_full_mass(self, spec):
        k = PoissonKernel(2, 0.5)
        z = np.array([1.0, 0.0])
        rep = solve_vt(k, z, 0.0, [0.3, 0.0], spec)
        assert abs(rep.value - 1.0) <= 1e-7

    def test_monotone_nonincreasing_in_t(self, fast_spec):
        k = PoissonKernel(1, 0.5)
        vals = [
            solve_vt(k, [1.0], t, [0.5], fast_spec).value
            for t in (0.0, 0.5, 1.0, 2.0, 4.0)
        ]
        assert all(a >= b - 1e-8 for a, b in zip(vals, vals[1:]))

    def test_values_between_zero_and_one(self, fast_spec):
        k = PoissonKernel(2, 0.7)
        z = np.array([0.0, 1.0])
        for t in (0.1, 1.0, 3.0):
            v = solve_vt(k, z, t, [0.0, 0.6], fast_spec).value
            assert -1e-9 <= v <= 1.0 + 1e-9

    def test_rotation_equivariance(self, fast_spec):
        k = PoissonKernel(2, 0.5)
        a = solve_vt(k, [1.0, 0.0], 0.8, [0.7, 0.0], fast_spec)
        b = solve_vt(k, [0.0, 1.0], 0.8, [0.0, 0.7], fast_spec)
        assert abs(a.value - b.value) <= a.error_estimate + b.error_estimate + 1e-9

    def test_antipodal_point_sees_larger_values(self, fast_spec):
        # the excised cap around z removes more mass from solutions near z
        k = PoissonKernel(1, 0.5)
        near = solve_vt(k, [1.0], 0.5, [0.8], fast_spec).value
        far = solve_vt(k, [1.0], 0.5, [-0.8], fast_spec).value
        assert far > near

    def test_validates_inputs(self, spec):
        k = PoissonKernel(1, 0.5)
        with pytest.raises(DomainError):
            solve_vt(k, [0.5], 1.0, [0.0], spec)
        with pytest.raises(DomainError):
            solve_vt(k, [1.0], -0.1, [0.0], spec)
        with pytest.raises(DomainError):
            solve_vt(k, [1.0], 1.0, [1.2], spec)


class TestBoundaryCheck:
    def test_constant_datum_trivial_case(self):
        problem = BallProblem(PoissonKernel(1, 0.5), constant_datum(1.0, 1))
        chk = interior_to_boundary_check(problem, [0.9], [1.0], t_max=2.0)
        assert chk.holds
        assert chk.lhs <= 1e-6

    def test_halfline_datum_near_boundary(self):
        g = halfline_modulus_datum(ModulusFunction.power(0.5))
        problem = BallProblem(PoissonKernel(1, 0.5), g)
        chk = interior_to_boundary_check(problem, [0.9], [1.0])
        assert chk.holds
        assert chk.rhs >= chk.lhs
        assert chk.slack >= 0.0

    def test_requires_t_max_for_unbounded_data(self):
        problem = BallProblem(PoissonKernel(1, 0.5), constant_datum(1.0, 1))
        assert problem.datum.support_radius is None
        with pytest.raises(DomainError):
            interior_to_boundary_check(problem, [0.5], [1.0])


class TestHarmonicity:
    def test_residual_vanishes_for_indicator_datum(self):
        problem = BallProblem(
            PoissonKernel(1, 0.5), radial_indicator_datum(0.5, 1)
        )
        rep = harmonicity_check(problem, [0.0])
        assert abs(rep.value) <= 1e-4

    def test_calibration_independence(self):
        problem = BallProblem(
            PoissonKernel(1, 0.5), radial_indicator_datum(0.5, 1)
        )
        a = harmonicity_check(problem, [0.2], calibration=1.0)
        b = harmonicity_check(problem, [0.2], calibration=3.0)
        assert abs(a.value) <= 1e-4
        assert abs(b.value) <= 3e-4
