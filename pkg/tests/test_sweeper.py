import dataclasses
import math

import numpy as np
import pytest

from regsweep import (
    Ball,
    BallComplement,
    Box,
    ConcentricBallFamily,
    CuspPair,
    FixedFamily,
    InteriorParams,
    JumpAdmissibilityError,
    StepFn,
    SweepProblem,
    TestBudget,
    catching_up,
    solve,
    sup_distance,
    total_variation,
    variation_bound,
)
from regsweep.proxgeom.family import Bracket, ParamFamily
from regsweep.regulated import RegulatedInput
from regsweep.sweeper import DEFAULT_M
from regsweep.sweeper.diagnostics import (
    ac_residual,
    continuous_dependence_study,
    holder_local_check,
    residuals,
    restrict_residual,
    uniqueness_probe,
    variation_audit,
)


def interval_problem(r=10.0, M=None):
    u = StepFn([0, 0.5, 1], [[0.0], [1.5], [1.5]])
    w = StepFn.constant(0.0, 0, 1)
    fam = FixedFamily(Box([-1.0], [1.0]))
    return SweepProblem(u=u, w=w, family=fam, x0=[0.0], r=r, M=M if M else DEFAULT_M)


def complement_problem(u_values, x0=(1.0, 0.0), M=2.0, interior=None):
    times = np.linspace(0.0, 1.0, len(u_values))
    u = StepFn(times, np.asarray(u_values, float))
    w = StepFn.constant(0.0, 0, 1)
    fam = FixedFamily(BallComplement([0.0, 0.0], 1.0), interior=interior)
    return SweepProblem(u=u, w=w, family=fam, x0=np.asarray(x0), r=1.0, M=M)


class TestDefaults:
    def test_default_jump_constant_root(self):
        m = DEFAULT_M
        assert m >= 2.0
        assert abs(2.0 * m * m - 9.0 * m + 2.0) <= 1e-12

    def test_m_below_two_rejected(self):
        prob = dataclasses.replace(interval_problem(), M=1.5)
        with pytest.raises(ValueError):
            prob.validate()

    def test_x0_membership_enforced(self):
        prob = dataclasses.replace(interval_problem(), x0=np.array([2.0]))
        with pytest.raises(ValueError):
            prob.validate()

    def test_gauge_strictly_below_r_over_m(self):
        prob = interval_problem(r=1.0)  # jump 1.5 >= 1/M
        with pytest.raises(JumpAdmissibilityError):
            prob.validate()


class TestCatchingUpExamples:
    def test_interval_single_jump(self):
        sol = catching_up(interval_problem())
        assert np.allclose(sol.x.eval(0.5), [1.0], atol=1e-15)
        assert np.allclose(sol.xi.eval(0.5), [0.5], atol=1e-15)

    def test_complement_free_motion(self):
        # moving outward: the predictor stays in the set, no offset change
        # (an outward jump of exactly r/M would be refused: strict inequality)
        prob = complement_problem([[0.0, 0.0], [0.45, 0.0], [0.45, 0.0]])
        sol = catching_up(prob)
        assert np.allclose(sol.x.eval(0.5), [1.45, 0.0], atol=1e-15)
        assert np.allclose(sol.xi.eval(0.5), [-1.0, 0.0], atol=1e-15)
        assert sol.log.dxi[0] == 0.0

    def test_equality_with_the_jump_cap_is_refused(self):
        prob = complement_problem([[0.0, 0.0], [0.5, 0.0], [0.5, 0.0]])
        with pytest.raises(JumpAdmissibilityError):
            catching_up(prob)

    def test_complement_pressed_inward(self):
        prob = complement_problem([[0.0, 0.0], [-0.4, 0.0], [-0.4, 0.0]])
        sol = catching_up(prob)
        assert np.allclose(sol.x.eval(0.5), [1.0, 0.0], atol=1e-15)
        assert np.allclose(sol.xi.eval(0.5), [-1.4, 0.0], atol=1e-15)
        assert sol.log.dxi[0] == pytest.approx(0.4, abs=1e-15)
        assert sol.log.dxi[0] == sol.log.predictor_dist[0]

    def test_offset_plus_state_equals_input(self):
        prob = complement_problem([[0.0, 0.0], [-0.3, 0.1], [-0.1, -0.2], [0.2, 0.0]])
        sol = catching_up(prob)
        recomposed = sol.xi.values + sol.x.values
        u_vals = prob.u.eval_many(sol.xi.times)
        assert np.allclose(recomposed, u_vals, atol=1e-14)

    def test_membership_along_the_run(self):
        prob = complement_problem([[0.0, 0.0], [-0.3, 0.1], [-0.1, -0.2], [0.2, 0.0]])
        sol = catching_up(prob)
        zset = prob.family.set_at(0.0)
        for xv in sol.x.values:
            assert zset.contains(xv, 1e-12)

    def test_running_variation_consistent_with_step_norms(self):
        prob = complement_problem([[0.0, 0.0], [-0.3, 0.1], [-0.1, -0.2], [0.2, 0.0]])
        sol = catching_up(prob)
        cum = np.concatenate([[0.0], np.cumsum(sol.log.dxi)])
        assert np.max(np.abs(sol.running_variation.values - cum)) <= 1e-9
        assert np.all(np.diff(sol.running_variation.values) >= 0.0)

    def test_step_bounds_have_nonnegative_slack(self):
        prob = complement_problem([[0.0, 0.0], [-0.3, 0.1], [-0.1, -0.2], [0.2, 0.0]])
        sol = catching_up(prob)
        assert np.min(sol.log.cap_slack) >= 0.0
        assert np.min(sol.log.state_bound_slack) >= -1e-12
        assert np.min(sol.log.output_bound_slack) >= -1e-12


class TestConvexReduction:
    def test_1d_play_oracle(self):
        rng = np.random.default_rng(21)
        steps = 400
        u_vals = np.cumsum(rng.uniform(-0.2, 0.2, size=steps + 1))
        u_vals[0] = 0.0
        u = StepFn(np.linspace(0, 1, steps + 1), u_vals[:, None])
        prob = SweepProblem(
            u=u,
            w=StepFn.constant(0.0, 0, 1),
            family=FixedFamily(Box([-1.0], [1.0])),
            x0=[0.0],
            r=1.0,
        )
        sol = catching_up(prob)
        xi, expect = float(u_vals[0] - 0.0), []
        for uv in u_vals:
            xi = min(max(xi, uv - 1.0), uv + 1.0)
            expect.append(xi)
        assert np.max(np.abs(sol.xi.values[:, 0] - np.asarray(expect))) <= 1e-12

    def test_2d_ball_radial_oracle(self):
        rng = np.random.default_rng(22)
        steps = 200
        jumps = rng.uniform(-0.15, 0.15, size=(steps, 2))
        u_vals = np.vstack([[0.0, 0.0], np.cumsum(jumps, axis=0)])
        u = StepFn(np.linspace(0, 1, steps + 1), u_vals)
        prob = SweepProblem(
            u=u,
            w=StepFn.constant(0.0, 0, 1),
            family=FixedFamily(Ball([0.0, 0.0], 1.0)),
            x0=[0.0, 0.0],
            r=1.0,
        )
        sol = catching_up(prob)
        # independent recursion: clamp the predictor into the unit ball
        x = np.zeros(2)
        for j in range(1, steps + 1):
            p = x + u_vals[j] - u_vals[j - 1]
            n = np.linalg.norm(p)
            x = p if n <= 1.0 else p / n
        assert np.linalg.norm(sol.x.values[-1] - x) <= 1e-9


class TestResiduals:
    def _active_problem(self):
        return complement_problem(
            [[0.0, 0.0], [-0.2, 0.0], [-0.35, 0.05], [-0.2, 0.1], [-0.4, 0.0]],
            interior=InteriorParams(rho=0.1, R=3.2),
        )

    def test_valid_solution_nonnegative(self):
        prob = self._active_problem()
        sol = catching_up(prob)
        rep = residuals(sol, prob, TestBudget(z_per_step=16, test_functions=8, seed=31))
        assert rep.discrete_vi_min >= -1e-12
        assert rep.kurzweil_vi_min >= -1e-12
        assert rep.k4_gap_normalized <= 1e-12

    def test_solution_itself_gives_zero(self):
        prob = self._active_problem()
        sol = catching_up(prob)
        rep = residuals(sol, prob, TestBudget(z_per_step=1, test_functions=1, seed=32))
        assert rep.kurzweil_vi_min == 0.0

    def test_perturbed_solution_detected(self):
        prob = self._active_problem()
        sol = catching_up(prob)
        x_vals = sol.x.values.copy()
        active = int(np.argmax(sol.log.dxi)) + 1
        x_vals[active] = x_vals[active] * (1.0 + 0.01)  # nudged off the boundary
        x_bad = StepFn(sol.x.times, x_vals)
        xi_bad = StepFn(sol.x.times, prob.u.eval_many(sol.x.times) - x_vals)
        bad = dataclasses.replace(
            sol, x=x_bad, xi=xi_bad, running_variation=total_variation(xi_bad).running
        )
        rep = residuals(bad, prob, TestBudget(z_per_step=16, test_functions=4, seed=33))
        assert rep.discrete_vi_min < -1e-6

    def test_restrict_consistency(self):
        prob = self._active_problem()
        sol = catching_up(prob)
        t = sol.xi.times
        budget = TestBudget(z_per_step=4, test_functions=1, seed=34)
        full = restrict_residual(sol, prob, float(t[0]), float(t[-1]), budget)
        rep = residuals(sol, prob, TestBudget(z_per_step=4, test_functions=1, seed=34))
        assert full == pytest.approx(rep.kurzweil_vi_min, abs=1e-12)

    def test_restrict_single_step_matches_per_step_value(self):
        prob = self._active_problem()
        sol = catching_up(prob)
        t = sol.xi.times
        j = int(np.argmax(sol.log.dxi)) + 1
        val = restrict_residual(
            sol, prob, float(t[j - 1]), float(t[j]), TestBudget(test_functions=1)
        )
        assert val == pytest.approx(0.0, abs=1e-12)  # test path equals the state

    def test_restrict_inactive_window_is_zero(self):
        prob = complement_problem([[0.0, 0.0], [0.3, 0.0], [0.6, 0.0]])
        sol = catching_up(prob)  # free motion: offset constant
        t = sol.xi.times
        val = restrict_residual(
            sol, prob, float(t[0]), float(t[-1]), TestBudget(test_functions=4, seed=35)
        )
        assert val == pytest.approx(0.0, abs=1e-12)

    def test_restrict_requires_breakpoints(self):
        prob = self._active_problem()
        sol = catching_up(prob)
        with pytest.raises(ValueError):
            restrict_residual(sol, prob, 0.111, 0.9, TestBudget())


class TestUniqueness:
    def test_plateau_refinement_is_noop(self):
        prob = complement_problem([[0.0, 0.0], [-0.3, 0.1], [-0.1, -0.2], [0.2, 0.0]])
        verdict = uniqueness_probe(prob, refinements=4, seed=41)
        assert verdict.max_deviation == 0.0
        assert verdict.bitwise_identical

    def test_jumps_stay_atomic(self):
        # refinement points never split a jump: divisions already contain them
        prob = interval_problem()
        verdict = uniqueness_probe(prob, refinements=4, seed=42)
        assert verdict.bitwise_identical


class TestVariationBound:
    def test_reference_value(self):
        assert variation_bound(1.0, 0.1, 3.0) == pytest.approx(0.5776684975551554, abs=1e-12)

    def test_vanishes_with_rho(self):
        assert variation_bound(1.0, 1e-6, 3.0) < 1e-4

    def test_parameter_domain(self):
        with pytest.raises(ValueError):
            variation_bound(1.0, 0.25, 3.0)  # (1+R^2) rho >= 2r
        with pytest.raises(ValueError):
            variation_bound(1.0, 0.1, 2.0)  # R < 3


class TestVariationAudit:
    def test_constant_inputs_zero_variation(self):
        u = StepFn(np.linspace(0, 1, 11), np.zeros((11, 2)))
        w = StepFn.constant(0.0, 0, 1)
        fam = FixedFamily(
            BallComplement([0.0, 0.0], 1.0), interior=InteriorParams(rho=0.1, R=3.2)
        )
        prob = SweepProblem(u=u, w=w, family=fam, x0=[1.0, 0.0], r=1.0)
        sol = catching_up(prob)
        rep = variation_audit(sol, prob, [(0, 10)])
        assert rep.windows[0].window_variation == 0.0
        assert rep.windows[0].slack > 0.0
        assert rep.global_slack > 0.0

    def test_window_drift_condition_enforced(self):
        prob = complement_problem(
            [[0.0, 0.0], [-0.2, 0.0], [-0.35, 0.05]],
            interior=InteriorParams(rho=0.1, R=3.2),
        )
        sol = catching_up(prob)
        with pytest.raises(ValueError):
            variation_audit(sol, prob, [(0, 2)])  # drift 0.35 > rho

    def test_oscillation_below_bound(self):
        m = 400
        j = np.arange(m + 1)
        u_vals = np.stack([-0.03 * j / m, 0.04 * np.where(j % 2 == 0, 1.0, -1.0)], axis=1)
        prob = complement_problem(u_vals, interior=InteriorParams(rho=0.1, R=3.2))
        sol = catching_up(prob)
        rep = variation_audit(sol, prob, [(0, m)])
        w = rep.windows[0]
        assert w.slack >= 0.0
        assert w.test_element_vi_min >= -1e-9
        assert total_variation(prob.u).total > 10.0  # unbounded-input mechanism


class TestCuspNegativeControl:
    def test_offset_tracks_input_exactly(self):
        m = 400
        j = np.arange(m + 1)
        y = 0.05 * np.where(j % 2 == 1, 1.0, -1.0)
        y[0] = 0.0
        u = StepFn(np.linspace(0, 1, m + 1), np.stack([np.zeros(m + 1), y], axis=1))
        prob = SweepProblem(
            u=u,
            w=StepFn.constant(0.0, 0, 1),
            family=FixedFamily(CuspPair(1.0)),
            x0=[0.0, 0.0],
            r=1.0,
        )
        sol = catching_up(prob)
        assert sup_distance(sol.xi, u) == 0.0
        assert sol.total_variation == total_variation(u).total


class TestHolder:
    def _drag_problem(self):
        mesh = np.linspace(0, 1, 501)
        u = StepFn(mesh, np.stack([-0.5 * mesh, np.zeros(mesh.size)], axis=1))
        fam = FixedFamily(
            BallComplement([0.0, 0.0], 1.0), interior=InteriorParams(rho=0.1, R=3.2)
        )
        return SweepProblem(u=u, w=StepFn.constant(0.0, 0, 1), family=fam, x0=[1.0, 0.0], r=1.0)

    def test_constant_window_trivial(self):
        prob = complement_problem([[0.0, 0.0], [0.0, 0.0], [0.0, 0.0]])
        sol = catching_up(prob)
        t = sol.xi.times
        rep = holder_local_check(sol, prob, float(t[0]), float(t[-1]))
        assert rep.window_u == 0.0
        assert rep.min_slack >= 0.0

    def test_positive_slack_on_active_run(self):
        prob = self._drag_problem()
        sol = catching_up(prob)
        t = sol.xi.times
        rep = holder_local_check(sol, prob, float(t[100]), float(t[300]))
        assert rep.min_slack >= 0.0

    def test_shrinking_windows_shrink_the_oscillation(self):
        prob = self._drag_problem()
        sol = catching_up(prob)
        t = sol.xi.times
        gaps = []
        for width in (400, 200, 100, 50):
            sigma, tau = float(t[50]), float(t[50 + width])
            xi_vals = sol.xi.eval_many(np.asarray([sigma, tau]))
            gaps.append(float(np.linalg.norm(xi_vals[1] - xi_vals[0])))
            rep = holder_local_check(sol, prob, sigma, tau)
            assert rep.min_slack >= 0.0
        assert gaps[-1] <= gaps[0]
        assert gaps[-1] <= 0.1


class TestAcResidual:
    def test_constant_input_trivial(self):
        prob = complement_problem([[0.0, 0.0]] * 5)
        rep = ac_residual(prob, sample_count=3, z_per_time=4, seed=51)
        assert rep.residual_min_scaled == pytest.approx(0.0, abs=1e-15)

    def test_linear_drag_against_interval(self):
        mesh = np.linspace(0, 1, 1001)
        u = StepFn(mesh, (2.0 * mesh)[:, None])
        prob = SweepProblem(
            u=u,
            w=StepFn.constant(0.0, 0, 1),
            family=FixedFamily(Box([-1.0], [1.0])),
            x0=[0.0],
            r=1.0,
        )
        rep = ac_residual(prob, sample_count=100, z_per_time=8, seed=52)
        assert rep.residual_min_scaled >= -1e-10
        assert rep.c_hat_sq <= 1.0 + 1e-9

    def test_needs_lipschitz_family(self):
        class NoModulus(ParamFamily):
            def set_at(self, w):
                return BallComplement([0.0, 0.0], 1.0)

            def hausdorff(self, w1, w2):
                return Bracket.exact(0.0)

        prob = dataclasses.replace(
            complement_problem([[0.0, 0.0]] * 3), family=NoModulus()
        )
        with pytest.raises(ValueError):
            ac_residual(prob)


class TestContinuousDependence:
    def _base(self):
        return complement_problem(
            [[0.0, 0.0], [-0.2, 0.0], [-0.3, 0.05], [-0.4, 0.0]],
            interior=InteriorParams(rho=0.1, R=3.2),
        )

    def test_zero_perturbation(self):
        prob = self._base()
        table = continuous_dependence_study(prob, [(None, None, None)])
        assert table.rows[0].output_gap == 0.0

    def test_shrinking_translations(self):
        prob = self._base()
        perturbations = [
            (StepFn.constant([0.0, d], 0, 1), None, None) for d in (0.1, 0.05, 0.025)
        ]
        table = continuous_dependence_study(prob, perturbations)
        assert table.monotone
        gaps = [r.output_gap for r in table.rows]
        assert gaps[0] >= gaps[-1] > 0.0
        assert table.fitted_constant < 10.0

    def test_initial_state_shift(self):
        prob = self._base()
        shifts = [(None, None, np.array([0.2, 0.0])), (None, None, np.array([0.05, 0.0]))]
        table = continuous_dependence_study(prob, shifts)
        for row, mag in zip(table.rows, (0.2, 0.05)):
            assert row.initial_gap == pytest.approx(mag, abs=1e-12)
            assert row.output_gap <= 3.0 * mag

    def test_requires_interior(self):
        prob = complement_problem([[0.0, 0.0]] * 3)
        with pytest.raises(ValueError):
            continuous_dependence_study(prob, [(None, None, None)])


class TestSolve:
    def test_constant_inputs_constant_offset(self):
        fam = FixedFamily(
            BallComplement([0.0, 0.0], 1.0), interior=InteriorParams(rho=0.1, R=3.2)
        )
        u = RegulatedInput.from_lipschitz(lambda t: np.array([0.0, 0.0]), 0.0, 1.0, 0.0)
        w = RegulatedInput.from_lipschitz(lambda t: 0.0, 0.0, 1.0, 0.0)
        prob = SweepProblem(
            u=u, w=w, family=fam, x0=[1.0, 0.0], r=1.0, mesh_schedule=(0.01, 0.005)
        )
        result = solve(prob)
        assert result.case == "interior"
        assert np.all(result.table.diffs == 0.0)
        assert result.solution.total_variation == 0.0

    def test_shrinking_ball_family_bv_case(self):
        u = StepFn([0, 0.5, 1], [[0.0, 0.0], [0.05, 0.0], [0.05, 0.0]])
        w = StepFn(np.linspace(0, 1, 21), np.linspace(1.0, 0.8, 21))
        prob = SweepProblem(
            u=u, w=w, family=ConcentricBallFamily([0.0, 0.0]), x0=[0.95, 0.0], r=1.0
        )
        result = solve(prob)
        assert result.case == "bv"
        sol = result.solution
        # the state is squeezed inward with the shrinking radius
        assert np.linalg.norm(sol.x.values[-1]) <= 0.8 + 1e-9

    def test_requires_a_guarantee(self):
        class Bare(ParamFamily):
            def set_at(self, w):
                return BallComplement([0.0, 0.0], 1.0)

            def hausdorff(self, w1, w2):
                return Bracket.exact(0.0)

        prob = dataclasses.replace(complement_problem([[0.0, 0.0]] * 3), family=Bare())
        with pytest.raises(ValueError):
            solve(prob)

    def test_lying_hausdorff_bracket_detected_mid_run(self):
        # a family whose bracket underreports the set motion: the gauge check
        # passes but the predictor leaves the reach tube mid-run
        class Liar(ParamFamily):
            lipschitz = 0.0

            def set_at(self, w):
                return BallComplement([float(np.ravel(w)[0]), 0.0], 1.0)

            def hausdorff(self, w1, w2):
                return Bracket.exact(0.0)

        u = StepFn.constant([1.0, 0.0], 0, 1)
        w = StepFn([0, 0.5, 1], [0.0, 1.0, 1.0])
        prob = SweepProblem(u=u, w=w, family=Liar(), x0=[1.0, 0.0], r=1.0)
        with pytest.raises(JumpAdmissibilityError):
            catching_up(prob)

    def test_regulated_needs_schedule(self):
        u = RegulatedInput.from_lipschitz(lambda t: np.array([0.0, 0.0]), 0.0, 1.0, 0.0)
        w = RegulatedInput.from_lipschitz(lambda t: 0.0, 0.0, 1.0, 0.0)
        fam = FixedFamily(
            BallComplement([0.0, 0.0], 1.0), interior=InteriorParams(rho=0.1, R=3.2)
        )
        prob = SweepProblem(u=u, w=w, family=fam, x0=[1.0, 0.0], r=1.0)
        with pytest.raises(ValueError):
            solve(prob)
