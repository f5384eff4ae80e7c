"""The catching-up recursion and its refinement-convergence driver.

Each step projects the predictor ``x_{j-1} + u_j - u_{j-1}`` onto the
current set ``Z(w_j)`` and accumulates the offset ``xi_j = u_j - x_j``.
For step inputs this produces the exact solution of the integral
variational inequality; regulated inputs are resolved by solving on a
schedule of step approximations and checking the Cauchy trend of the
resulting outputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import JumpAdmissibilityError
from ..regulated import RegulatedInput, step_approximate
from ..stepfunctions import StepFn, sup_distance, total_variation, vnorm
from .problem import StepLog, SweepProblem, SweepSolution

__all__ = ["catching_up", "solve", "ConvergenceTable", "SolveResult"]


def catching_up(problem: SweepProblem, *, validate: bool = True, tol: float = 1e-9) -> SweepSolution:
    """Run the projection recursion for step inputs on their merged mesh."""
    if not problem.has_step_inputs:
        raise ValueError("catching_up needs step inputs; use solve() for regulated ones")
    if validate:
        problem.validate(tol)
    u, w, family = problem.u, problem.w, problem.family
    r, M = problem.r, problem.M
    times = np.union1d(u.times, w.times)
    uv = u.eval_many(times)
    wv = np.asarray(w.eval_many(times))
    m = times.size - 1

    x_vals = np.empty_like(np.atleast_2d(uv))
    x_vals = np.empty((m + 1, uv.shape[1] if uv.ndim == 2 else 1))
    uv2 = uv if uv.ndim == 2 else uv[:, None]
    x_vals[0] = np.asarray(problem.x0, dtype=float)

    dxi = np.empty(m)
    dx = np.empty(m)
    dist_pred = np.empty(m)
    du = np.empty(m)
    dh = np.empty(m)

    cap = r / M
    coef_x = 2.0 * M / (2.0 * M - 1.0)
    coef_mix = (4.0 * M - 1.0) / (2.0 * M - 1.0)

    for j in range(1, m + 1):
        zset = family.set_at(wv[j])
        predictor = x_vals[j - 1] + uv2[j] - uv2[j - 1]
        d = zset.distance(predictor)
        if d >= r:
            raise JumpAdmissibilityError(
                f"predictor at t={times[j]:g} lies at distance {d:.6g} >= r={r:g} "
                "from the current set; inputs violate the jump admissibility"
            )
        x_vals[j] = zset.nearest_point(predictor)
        dist_pred[j - 1] = d
        du[j - 1] = vnorm(uv2[j] - uv2[j - 1])
        if np.array_equal(wv[j], wv[j - 1]):
            dh[j - 1] = 0.0
        else:
            dh[j - 1] = family.hausdorff(wv[j - 1], wv[j]).hi
        dx[j - 1] = vnorm(x_vals[j] - x_vals[j - 1])
        dxi[j - 1] = vnorm(predictor - x_vals[j])

    xi_vals = uv2 - x_vals
    if uv.ndim == 1:
        x_fn = StepFn(times, x_vals[:, 0])
        xi_fn = StepFn(times, xi_vals[:, 0])
    else:
        x_fn = StepFn(times, x_vals)
        xi_fn = StepFn(times, xi_vals)

    log = StepLog(
        times=times[1:],
        dxi=dxi,
        dx=dx,
        predictor_dist=dist_pred,
        du=du,
        dh=dh,
        jump_gauge=du + dh,
        cap_slack=cap - dxi,
        state_bound_slack=coef_x * du + coef_mix * dh - dx,
        output_bound_slack=coef_mix * (du + dh) - dxi,
    )
    return SweepSolution(
        xi=xi_fn,
        x=x_fn,
        running_variation=total_variation(xi_fn).running,
        log=log,
        problem=problem,
    )


@dataclass(frozen=True)
class ConvergenceTable:
    """Refinement study: successive output differences against input discrepancies.

    ``ratios[k] = diffs[k]^2 / (deltas[k] + deltas[k]^2)`` must stay bounded
    by a single constant when the scheme converges at the square-root rate
    predicted by the a-priori estimate; ``fitted_constant`` is the largest
    observed ratio.
    """

    epsilons: np.ndarray
    diffs: np.ndarray
    deltas: np.ndarray
    ratios: np.ndarray
    variations: np.ndarray
    fitted_constant: float

    @property
    def monotone(self) -> bool:
        d = self.diffs
        return bool(np.all(d[1:] <= d[:-1] * (1.0 + 1e-9) + 1e-15))


@dataclass(frozen=True)
class SolveResult:
    solution: SweepSolution
    table: ConvergenceTable
    case: str
    solutions: tuple = ()


def _sup_hausdorff(family, w_a: StepFn, w_b: StepFn) -> float:
    times = np.union1d(w_a.times, w_b.times)
    va = np.asarray(w_a.eval_many(times))
    vb = np.asarray(w_b.eval_many(times))
    worst = 0.0
    for a, b in zip(va, vb):
        if not np.array_equal(a, b):
            worst = max(worst, family.hausdorff(a, b).hi)
    return worst


def solve(problem: SweepProblem, *, tol: float = 1e-9, enforce_cauchy: bool = True) -> SolveResult:
    """Solve the sweeping process, resolving regulated inputs by refinement.

    Requires either interior parameters on the family (bounded output
    variation through the non-empty-interior mechanism) or a Lipschitz
    Hausdorff modulus with bounded-variation inputs.  For step inputs a
    single catching-up run is exact and the table is trivial.
    """
    if problem.family.interior is not None:
        case = "interior"
    elif problem.family.lipschitz is not None:
        case = "bv"
    else:
        raise ValueError(
            "need interior parameters or a Lipschitz Hausdorff modulus to guarantee a solution"
        )

    if problem.has_step_inputs:
        sol = catching_up(problem, tol=tol)
        empty = np.empty(0)
        table = ConvergenceTable(empty, empty, empty, empty, np.asarray([sol.total_variation]), 0.0)
        return SolveResult(solution=sol, table=table, case=case, solutions=(sol,))

    problem.validate(tol)
    eps = sorted(problem.mesh_schedule, reverse=True)
    gauge = problem.jump_gauge()
    headroom = problem.r / problem.M - gauge
    # approximants keep listed jumps exact and add at most 2 eps (1 + L)
    lip = problem.family.lipschitz or 0.0
    if 2.0 * eps[0] * (1.0 + lip) >= headroom:
        raise JumpAdmissibilityError(
            f"coarsest accuracy {eps[0]:g} too large: approximant jumps may exceed r/M "
            f"(headroom {headroom:g}, Hausdorff modulus {lip:g}); refine the schedule"
        )

    levels = []
    for e in eps:
        u_e = step_approximate(problem.u, e) if isinstance(problem.u, RegulatedInput) else problem.u
        w_e = step_approximate(problem.w, e) if isinstance(problem.w, RegulatedInput) else problem.w
        sub = problem.with_inputs(u_e, w_e)
        levels.append(catching_up(sub, tol=tol))

    diffs, deltas, ratios = [], [], []
    for a, b in zip(levels[:-1], levels[1:]):
        diff = sup_distance(a.xi, b.xi)
        delta = sup_distance(a.problem.u, b.problem.u) + _sup_hausdorff(
            problem.family, a.problem.w, b.problem.w
        )
        diffs.append(diff)
        deltas.append(delta)
        ratios.append(diff * diff / (delta + delta * delta) if delta > 0 else 0.0)
    table = ConvergenceTable(
        epsilons=np.asarray(eps),
        diffs=np.asarray(diffs),
        deltas=np.asarray(deltas),
        ratios=np.asarray(ratios),
        variations=np.asarray([s.total_variation for s in levels]),
        fitted_constant=float(np.max(ratios)) if ratios else 0.0,
    )
    if enforce_cauchy and not table.monotone:
        raise RuntimeError(
            f"refinement differences are not decreasing: {table.diffs.tolist()}"
        )
    return SolveResult(solution=levels[-1], table=table, case=case, solutions=tuple(levels))
