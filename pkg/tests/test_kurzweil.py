import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regsweep import (
    HypothesisError,
    StepFn,
    gen_exponential,
    gronwall_bound,
    hake_check,
    identity_tol,
    indicator_interval_integral,
    indicator_point_integral,
    ks_integral,
    ks_integral_scalar,
    parts_defect,
    quadratic_identity_defect,
    total_variation,
)


def random_step(rng, n=2, max_breaks=12, nondecreasing=False):
    m = int(rng.integers(1, max_breaks))
    interior = np.unique(rng.uniform(0, 1, size=m))
    times = np.concatenate([[0.0], interior, [1.0]])
    if nondecreasing:
        values = np.concatenate([[0.0], np.cumsum(rng.uniform(0, 0.4, size=times.size - 1))])
        return StepFn(times, values)
    if n == 1:
        return StepFn(times, rng.normal(size=times.size))
    return StepFn(times, rng.normal(size=(times.size, n)))


class TestClosedFormCases:
    def test_interval_indicator(self):
        rng = np.random.default_rng(1)
        f = random_step(rng, n=3)
        v = np.array([1.0, -2.0, 0.5])
        for tau in (0.25, f.times[1], 1.0):
            g = StepFn([0.0, tau, 1.0] if tau < 1 else [0.0, 0.5, 1.0],
                       np.stack([v, 0 * v, 0 * v]) if tau < 1 else np.stack([v, v, 0 * v]))
            expected = -float(np.dot(np.asarray(f.eval(tau)), v))
            assert indicator_interval_integral(f, v, tau) == expected
            assert ks_integral(f, g).value == pytest.approx(expected, abs=1e-14)

    def test_point_mass_interior_zero(self):
        f = StepFn.constant([1.0, 1.0], 0, 1)
        assert indicator_point_integral(f, [2.0, 3.0], 0.5) == 0.0

    def test_point_mass_at_end(self):
        rng = np.random.default_rng(2)
        f = random_step(rng, n=2)
        v = np.array([0.7, -0.3])
        g = StepFn([0.0, 0.5, 1.0], np.stack([0 * v, 0 * v, v]))
        expected = float(np.dot(np.asarray(f.eval(1.0)), v))
        assert indicator_point_integral(f, v, 1.0) == expected
        assert ks_integral(f, g).value == pytest.approx(expected, abs=1e-15)

    def test_point_mass_at_start(self):
        f = StepFn([0, 0.5, 1], [[1.0, 2.0], [0.0, 0.0], [3.0, 0.0]])
        v = [1.0, 1.0]
        assert indicator_point_integral(f, v, 0.0) == -3.0

    def test_constant_integrand_telescopes(self):
        rng = np.random.default_rng(3)
        g = random_step(rng, n=2)
        c = np.array([2.0, -1.0])
        f = StepFn.constant(c, 0, 1)
        expected = float(np.dot(c, np.asarray(g.eval(1.0)) - np.asarray(g.eval(0.0))))
        assert ks_integral(f, g).value == pytest.approx(expected, abs=1e-13)


class TestScalarIntegral:
    def test_unit_integrand(self):
        rng = np.random.default_rng(4)
        g = random_step(rng, nondecreasing=True)
        f = StepFn.constant(1.0, 0, 1)
        assert ks_integral_scalar(f, g) == pytest.approx(
            g.values[-1] - g.values[0], abs=1e-14
        )

    def test_monotone_in_integrand(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            g = random_step(rng, nondecreasing=True)
            f1 = random_step(rng, n=1)
            f2 = StepFn(f1.times, f1.values + rng.uniform(0, 2, size=f1.values.size))
            assert ks_integral_scalar(f1, g) <= ks_integral_scalar(f2, g) + 1e-12

    def test_indicator_catches_jump(self):
        h = 0.7
        tau = 0.4
        f = StepFn([0, tau, 1], [0.0, 1.0, 1.0])
        g = StepFn([0, tau, 1], [0.0, h, h])
        assert ks_integral_scalar(f, g) == pytest.approx(h, abs=1e-15)

    def test_decreasing_integrator_rejected(self):
        f = StepFn.constant(1.0, 0, 1)
        g = StepFn([0, 0.5, 1], [1.0, 0.5, 0.5])
        with pytest.raises(ValueError):
            ks_integral_scalar(f, g)


class TestIdentities:
    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10_000))
    def test_parts_identity_random(self, seed):
        rng = np.random.default_rng(seed)
        f = random_step(rng, n=2)
        g = random_step(rng, n=2)
        assert parts_defect(f, g) <= identity_tol(f, g)

    def test_parts_constants_exact(self):
        f = StepFn.constant([1.0, 2.0], 0, 1)
        g = StepFn.constant([3.0, -1.0], 0, 1)
        assert parts_defect(f, g) == 0.0

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 10_000))
    def test_quadratic_identity_random(self, seed):
        rng = np.random.default_rng(seed)
        g = random_step(rng, n=3)
        assert quadratic_identity_defect(g) <= identity_tol(g, g)

    def test_additivity_exact_at_breakpoints(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            f = random_step(rng, n=2)
            g = random_step(rng, n=2)
            whole = ks_integral(f, g)
            fr = f.refine(whole.division)
            gr = g.refine(whole.division)
            for c in whole.division[1:-1]:
                c = float(c)
                left = ks_integral(fr.restrict(0.0, c), gr.restrict(0.0, c)).value
                right = ks_integral(fr.restrict(c, 1.0), gr.restrict(c, 1.0)).value
                assert left + right == pytest.approx(whole.value, abs=identity_tol(f, g))

    def test_decomposition_sums_to_value(self):
        rng = np.random.default_rng(7)
        f = random_step(rng, n=2)
        g = random_step(rng, n=2)
        result = ks_integral(f, g)
        assert result.value == float(np.sum(result.contributions))

    def test_bilinearity_in_integrand(self):
        rng = np.random.default_rng(8)
        f1, f2, g = (random_step(rng, n=2) for _ in range(3))
        a, b = 1.7, -0.4
        lhs = ks_integral(a * f1 + b * f2, g).value
        rhs = a * ks_integral(f1, g).value + b * ks_integral(f2, g).value
        assert lhs == pytest.approx(rhs, abs=identity_tol(f1, g) + identity_tol(f2, g))

    def test_linearity_in_integrator(self):
        rng = np.random.default_rng(18)
        f, g1, g2 = (random_step(rng, n=2) for _ in range(3))
        a, b = -0.9, 2.3
        lhs = ks_integral(f, a * g1 + b * g2).value
        rhs = a * ks_integral(f, g1).value + b * ks_integral(f, g2).value
        assert lhs == pytest.approx(rhs, abs=identity_tol(f, g1) + identity_tol(f, g2))

    def test_regulated_integrand_reports_accuracy(self):
        from regsweep import RegulatedInput
        from regsweep.kurzweil import ks_integral_approx

        rng = np.random.default_rng(19)
        g = random_step(rng, n=1, nondecreasing=True)
        f = RegulatedInput.from_lipschitz(lambda t: math.sin(3.0 * t), 0.0, 1.0, 3.0)
        exact = None
        prev_err = None
        for eps in (0.1, 0.01, 0.001):
            result, used = ks_integral_approx(f, g, eps)
            assert used == eps
            if exact is None:
                fine, _ = ks_integral_approx(f, g, 1e-6)
                exact = fine.value
            err = abs(result.value - exact)
            var_g = total_variation(g).total
            assert err <= (eps + 1e-6) * var_g + 1e-12
            if prev_err is not None:
                assert err <= prev_err + 1e-12
            prev_err = err

    def test_uniform_convergence_rate(self):
        # perturbing the integrand by h/2^k moves the integral by at most
        # (h/2^k) Var g: measured rate across a refinement family
        rng = np.random.default_rng(9)
        f = random_step(rng, n=2)
        g = random_step(rng, n=2)
        h = random_step(rng, n=2)
        base = ks_integral(f, g).value
        var_g = total_variation(g).total
        errors = []
        for k in range(1, 7):
            fk = f + (2.0**-k) * h
            errors.append(abs(ks_integral(fk, g).value - base))
            assert errors[-1] <= (2.0**-k) * h.sup_norm() * var_g + 1e-12
        for e_prev, e_next in zip(errors[:-1], errors[1:]):
            assert e_next <= 0.5 * e_prev + 1e-12


class TestHake:
    def test_continuous_point_no_jump(self):
        f = StepFn.constant([1.0, 0.0], 0, 1)
        g = StepFn([0, 0.5, 1], [[0.0, 0.0], [1.0, 0.0], [1.0, 0.0]])
        # c = 0.75 is interior to a plateau: jump term 0, defect 0
        assert hake_check(f, g, 0.75) <= 1e-15

    def test_jump_term_is_the_difference(self):
        h = np.array([0.6, -0.2])
        c = 0.5
        f = StepFn([0, c, 1], [[1.0, 0.0], [1.0, 0.0], [1.0, 0.0]])
        g = StepFn([0, c, 1], np.stack([[0.0, 0.0], h, h]))
        upto_c = ks_integral(f.restrict(0, c), g.restrict(0, c)).value
        before = 0.0  # g constant before the jump
        assert upto_c - before == pytest.approx(float(np.dot([1.0, 0.0], h)), abs=1e-15)
        assert hake_check(f, g, c) <= 1e-15

    def test_random_breakpoints(self):
        rng = np.random.default_rng(10)
        for _ in range(40):
            f = random_step(rng, n=2)
            g = random_step(rng, n=2)
            c = float(rng.choice(g.times[1:]))
            assert hake_check(f, g, c) <= identity_tol(f, g)


class TestGenExponential:
    def test_quarter_increments(self):
        g = StepFn([0, 0.4, 1], [0.0, 0.25, 0.5])
        y = gen_exponential(g).solution
        assert np.allclose(y.values, [1.0, 4.0 / 3.0, 16.0 / 9.0], rtol=0, atol=1e-15)

    def test_constant_driver(self):
        g = StepFn.constant(2.0, 0, 1)
        assert np.array_equal(gen_exponential(g).solution.values, [1.0, 1.0])

    def test_fine_mesh_approaches_exponential(self):
        mesh = np.linspace(0.0, 1.0, 1001)
        y_end = gen_exponential(StepFn(mesh, mesh)).solution.values[-1]
        assert abs(y_end - math.e) < 2e-3

    def test_integral_equation_exact(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            g = random_step(rng, nondecreasing=True)
            ge = gen_exponential(g)
            assert ge.integral_equation_defect() <= 1e-12 * (1 + ge.solution.values[-1])

    def test_upper_bound(self):
        rng = np.random.default_rng(12)
        for _ in range(30):
            g = random_step(rng, nondecreasing=True)
            y = gen_exponential(g).solution
            cap = math.exp(2.0 * (g.values[-1] - g.values[0]))
            assert np.all(y.values <= cap * (1 + 1e-12))
            assert np.all(y.values >= 1.0)
            assert np.all(np.diff(y.values) >= 0)

    def test_large_jump_rejected(self):
        g = StepFn([0, 0.5, 1], [0.0, 0.75, 0.75])
        with pytest.raises(ValueError):
            gen_exponential(g)

    def test_decreasing_rejected(self):
        g = StepFn([0, 0.5, 1], [0.0, -0.1, 0.0])
        with pytest.raises(ValueError):
            gen_exponential(g)


class TestGronwall:
    def test_constant_driver_reduces_to_plain_bound(self):
        g = StepFn.constant(1.0, 0, 1)
        z = StepFn([0, 0.5, 1], [0.3, 0.8, 0.1])
        verdict = gronwall_bound(z, g, gamma=1.0)
        assert verdict.conclusion_ok
        assert verdict.min_slack >= 0.2 - 1e-12  # gamma - max z

    def test_equality_case(self):
        rng = np.random.default_rng(13)
        g = random_step(rng, nondecreasing=True)
        gamma = 0.7
        y = gen_exponential(g).solution
        z = StepFn(y.times, gamma * y.values)
        verdict = gronwall_bound(z, g, gamma)
        assert verdict.conclusion_ok
        assert abs(verdict.min_slack) <= 1e-10 * (1 + y.values[-1])
        assert abs(verdict.max_slack) <= 1e-10 * (1 + y.values[-1])

    def test_random_admissible_below(self):
        rng = np.random.default_rng(14)
        for _ in range(25):
            g = random_step(rng, nondecreasing=True)
            gamma = float(rng.uniform(0.1, 2.0))
            c = float(rng.uniform(0.0, 1.0))
            y = gen_exponential(g).solution
            z = StepFn(y.times, c * gamma * y.values)
            verdict = gronwall_bound(z, g, gamma)
            assert verdict.conclusion_ok

    def test_hypothesis_violation_reported(self):
        g = StepFn.constant(0.0, 0, 1)
        z = StepFn.constant(2.0, 0, 1)
        with pytest.raises(HypothesisError) as err:
            gronwall_bound(z, g, gamma=1.0)
        assert "t=0" in str(err.value)

    def test_negative_gamma_rejected(self):
        g = StepFn.constant(0.0, 0, 1)
        z = StepFn.constant(0.0, 0, 1)
        with pytest.raises(ValueError):
            gronwall_bound(z, g, gamma=-1.0)
