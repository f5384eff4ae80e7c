"""Kurzweil-Stieltjes integration of step functions, with the identities
and Gronwall machinery that the sweeping-process analysis rests on.

For a regulated integrand against a right-continuous BV step integrator the
gauge-limit integral has a closed form: only the integrator's jumps
contribute, each sampled at the jump time.  On the merged breakpoint
division ``s_0 < ... < s_p`` this is

    integral = sum_j < f(s_j), g(s_j) - g(s_{j-1}) >,

which is what we evaluate; no gauge-partition limit process is involved.
Pure point-mass integrators that are not right-continuous cannot be stored
as ``StepFn``; their integral values are exposed as closed forms below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import HypothesisError
from .stepfunctions import StepFn, Variation, merge_times, total_variation, vnorm

__all__ = [
    "IntegralValue",
    "ks_integral",
    "ks_integral_approx",
    "ks_integral_scalar",
    "indicator_interval_integral",
    "indicator_point_integral",
    "parts_defect",
    "quadratic_identity_defect",
    "hake_check",
    "GenExp",
    "gen_exponential",
    "GronwallVerdict",
    "gronwall_bound",
    "identity_tol",
]


@dataclass(frozen=True)
class IntegralValue:
    """Integral value with its per-subinterval decomposition.

    ``contributions[j]`` is the contribution of ``[division[j], division[j+1]]``;
    the value is their sum, so the integral is additive over subintervals.
    """

    value: float
    division: np.ndarray
    contributions: np.ndarray


def _pair_on_common_mesh(f: StepFn, g: StepFn):
    if f.start != g.start or f.end != g.end:
        raise ValueError("integrand and integrator live on different intervals")
    t = merge_times(f, g)
    return t, f.eval_many(t), g.eval_many(t)


def _dots(fv: np.ndarray, dg: np.ndarray) -> np.ndarray:
    if fv.ndim == 1:
        return fv * dg
    if fv.shape[1] != dg.shape[1]:
        raise ValueError("integrand and integrator dimensions differ")
    return np.einsum("ij,ij->i", fv, dg)


def ks_integral(f: StepFn, g: StepFn) -> IntegralValue:
    """Kurzweil-Stieltjes integral of ``<f, dg>`` for step ``f`` and ``g``."""
    t, fv, gv = _pair_on_common_mesh(f, g)
    contributions = _dots(fv[1:], np.diff(gv, axis=0))
    return IntegralValue(value=float(np.sum(contributions)), division=t, contributions=contributions)


def ks_integral_approx(f, g: StepFn, eps: float):
    """Integral of a regulated (non-step) integrand via step approximation.

    Replaces ``f`` by its step approximant at accuracy ``eps`` and integrates
    exactly; by uniform convergence the result is within
    ``eps * Var(g)`` of the true integral.  Returns ``(integral, eps)`` so
    the accuracy used is part of the result.
    """
    from .regulated import RegulatedInput, step_approximate

    if isinstance(f, StepFn):
        return ks_integral(f, g), 0.0
    if not isinstance(f, RegulatedInput):
        raise TypeError("integrand must be a StepFn or RegulatedInput")
    return ks_integral(step_approximate(f, eps), g), float(eps)


def ks_integral_scalar(f: StepFn, g: StepFn) -> float:
    """Integral of scalar ``f`` against a nondecreasing right-continuous step ``g``.

    Same sampling rule as :func:`ks_integral` with the scalar product replaced
    by multiplication; monotone in the integrand because the increments of
    ``g`` are nonnegative.
    """
    if not (f.is_scalar and g.is_scalar):
        raise ValueError("scalar integral needs scalar step functions")
    if np.any(np.diff(g.values) < 0):
        raise ValueError("integrator must be nondecreasing")
    t, fv, gv = _pair_on_common_mesh(f, g)
    return float(np.sum(fv[1:] * np.diff(gv)))


# -- closed forms for indicator integrators ----------------------------------


def _dot(a, b) -> float:
    return float(np.dot(np.ravel(np.asarray(a, dtype=float)), np.ravel(np.asarray(b, dtype=float))))


def indicator_interval_integral(f: StepFn, v, tau: float) -> float:
    """Integral of ``<f, d(v * indicator_[a,tau))>`` for ``tau`` in ``(a, b]``."""
    tau = float(tau)
    if not (f.start < tau <= f.end):
        raise ValueError("tau must lie in (start, end]")
    return -_dot(f.eval(tau), v)


def indicator_point_integral(f: StepFn, v, tau: float) -> float:
    """Integral of ``<f, d(v * indicator_{tau})>``.

    Interior point masses contribute nothing; at the endpoints the one-sided
    limit conventions produce ``-<f(a), v>`` and ``<f(b), v>``.
    """
    tau = float(tau)
    if not (f.start <= tau <= f.end):
        raise ValueError("tau outside the interval")
    if tau == f.start:
        return -_dot(f.eval(tau), v)
    if tau == f.end:
        return _dot(f.eval(tau), v)
    return 0.0


# -- identities ---------------------------------------------------------------


def identity_tol(f: StepFn, g: StepFn, base: float = 1e-12) -> float:
    """Rounding tolerance for exact-in-real-arithmetic identities.

    Scales the base tolerance by the magnitude of the integrand and the
    variation of the integrator.
    """
    return base * (1.0 + f.sup_norm()) * (1.0 + total_variation(g).total)


def parts_defect(f: StepFn, g: StepFn) -> float:
    """Residual of integration by parts, which vanishes in real arithmetic.

    Computes ``| I(f,dg) + I(g,df) - <f(b),g(b)> + <f(a),g(a)> - S |`` where
    ``S`` sums ``<left jump of f, left jump of g>`` minus the corresponding
    right-jump products over the interval.  Right-jump terms vanish for
    right-continuous step functions.
    """
    t, fv, gv = _pair_on_common_mesh(f, g)
    i_fg = float(np.sum(_dots(fv[1:], np.diff(gv, axis=0))))
    i_gf = float(np.sum(_dots(gv[1:], np.diff(fv, axis=0))))
    boundary = _dot(fv[-1], gv[-1]) - _dot(fv[0], gv[0])
    jump_sum = float(np.sum(_dots(np.diff(fv, axis=0), np.diff(gv, axis=0))))
    return abs(i_fg + i_gf - boundary - jump_sum)


def quadratic_identity_defect(g: StepFn) -> float:
    """Residual of ``I(g, dg) = |g(b)|^2/2 - |g(a)|^2/2 + sum |jumps|^2 / 2``."""
    integral = ks_integral(g, g).value
    jumps = np.diff(g.values, axis=0)
    if g.is_scalar:
        jump_sq = float(np.sum(jumps**2))
        gb2, ga2 = float(g.values[-1] ** 2), float(g.values[0] ** 2)
    else:
        jump_sq = float(np.sum(jumps**2))
        gb2 = float(np.dot(g.values[-1], g.values[-1]))
        ga2 = float(np.dot(g.values[0], g.values[0]))
    return abs(integral - 0.5 * gb2 + 0.5 * ga2 - 0.5 * jump_sq)


def hake_check(f: StepFn, g: StepFn, c: float) -> float:
    """Defect of the left-limit (Hake-type) formula at ``c`` in ``(a, b]``.

    ``integral over [a,c]`` minus ``limit of integrals over [a,s] as s -> c-``
    must equal ``<f(c), g(c) - g(c-)>``; the limit is evaluated at the last
    merged breakpoint before ``c``, where it is attained for step functions.
    """
    c = float(c)
    if not (f.start < c <= f.end):
        raise ValueError("c must lie in (start, end]")
    t, fv, gv = _pair_on_common_mesh(f, g)
    upto = t <= c
    # contributions of merged subintervals inside [a, c], including one
    # ending exactly at c if c is a breakpoint
    contr = _dots(fv[1:], np.diff(gv, axis=0))
    keep = upto[1:]
    integral_to_c = float(np.sum(contr[keep]))
    if not np.any(t == c):
        # c interior to a plateau: g constant on the gap, no extra term
        pass
    jump = _dot(f.eval(c), np.asarray(g.eval(c), dtype=float) - np.asarray(g.left_limit(c), dtype=float))
    # integral up to the last breakpoint strictly before c
    before = t < c
    integral_before = float(np.sum(contr[before[1:]]))
    return abs(integral_to_c - integral_before - jump)


# -- generalized exponential and Gronwall -------------------------------------


@dataclass(frozen=True)
class GenExp:
    """Solution of ``y(t) = 1 + integral_0^t y dg`` for a nondecreasing driver.

    For a step driver with increments ``D_i <= 1/2`` the solution is the step
    function with plateau values ``y_j = prod_i 1/(1 - D_i)``; it is
    nondecreasing, at least 1, and bounded by ``exp(2 (g(end) - g(start)))``.
    """

    driver: StepFn
    solution: StepFn

    def integral_equation_defect(self) -> float:
        """Max residual of the defining integral equation at breakpoints."""
        y, g = self.solution, self.driver
        cum = np.concatenate([[0.0], np.cumsum(y.values[1:] * np.diff(g.values))])
        return float(np.max(np.abs(y.values - 1.0 - cum)))


def gen_exponential(g: StepFn) -> GenExp:
    """Generalized exponential of a nondecreasing right-continuous step driver.

    Requires every jump of ``g`` to be at most 1/2.  When ``g`` is a fine
    approximation of a continuous function, the solution approaches
    ``exp(g(t) - g(start))``.
    """
    if not g.is_scalar:
        raise ValueError("driver must be scalar")
    inc = np.diff(g.values)
    if np.any(inc < 0):
        raise ValueError("driver must be nondecreasing")
    if np.any(inc > 0.5):
        raise ValueError("driver jumps must not exceed 1/2")
    y = np.concatenate([[1.0], np.cumprod(1.0 / (1.0 - inc))])
    return GenExp(driver=g, solution=StepFn(g.times, y))


@dataclass(frozen=True)
class GronwallVerdict:
    """Outcome of a Gronwall comparison ``z <= gamma * y`` at breakpoints."""

    conclusion_ok: bool
    min_slack: float
    max_slack: float
    worst_time: float
    bound: StepFn

    def __bool__(self) -> bool:
        return self.conclusion_ok


def gronwall_bound(z: StepFn, g: StepFn, gamma: float, tol: float = 1e-9) -> GronwallVerdict:
    """Verify the Gronwall comparison for right-continuous step data.

    First checks the hypothesis ``z(t) <= gamma + integral_0^t z dg`` at every
    merged breakpoint and raises :class:`HypothesisError` with the failure
    location if it does not hold.  Then verifies the conclusion
    ``z(t) <= gamma * y(t)`` with ``y`` the generalized exponential of ``g``,
    returning the slack profile.
    """
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    if not z.is_scalar:
        raise ValueError("z must be scalar")
    if np.any(z.values < 0):
        raise ValueError("z must be nonnegative")
    t = merge_times(z, g)
    zv = z.eval_many(t)
    gv = g.eval_many(t)
    cum = np.concatenate([[0.0], np.cumsum(zv[1:] * np.diff(gv))])
    scale = (1.0 + gamma + float(np.max(zv))) * (1.0 + float(gv[-1] - gv[0]))
    hyp_slack = gamma + cum - zv
    if np.min(hyp_slack) < -tol * scale:
        j = int(np.argmin(hyp_slack))
        raise HypothesisError(
            f"z(t) <= gamma + integral z dg fails at t={t[j]:g} "
            f"by {-hyp_slack[j]:.3e}"
        )
    y = gen_exponential(StepFn(t, gv)).solution
    slack = gamma * y.values - zv
    conclusion_ok = bool(np.min(slack) >= -tol * scale)
    j = int(np.argmin(slack))
    return GronwallVerdict(
        conclusion_ok=conclusion_ok,
        min_slack=float(np.min(slack)),
        max_slack=float(np.max(slack)),
        worst_time=float(t[j]),
        bound=StepFn(t, gamma * y.values),
    )
