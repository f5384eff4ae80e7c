"""Problem and solution containers for the sweeping-process solver."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from ..errors import JumpAdmissibilityError
from ..proxgeom.family import ParamFamily
from ..regulated import RegulatedInput, max_jump_gauge, max_jump_gauge_regulated
from ..stepfunctions import StepFn

__all__ = ["DEFAULT_M", "SweepProblem", "StepLog", "SweepSolution"]

#: default jump-safety constant; the positive root of 2 M^2 - 9 M + 2 = 0
DEFAULT_M = (9.0 + math.sqrt(65.0)) / 4.0


@dataclass(frozen=True)
class SweepProblem:
    """Inputs of a sweeping process with a prox-regular moving constraint.

    The driving translation ``u`` (vector valued) and the shape parameter
    ``w`` move the constraint ``Z(w(t))``; the state must stay inside it.
    ``r`` is the prox radius the projections rely on; ``M`` scales the
    admissible jump size ``r / M``.  Regulated inputs are resolved through
    the ``mesh_schedule`` of approximation accuracies.
    """

    u: StepFn | RegulatedInput
    w: StepFn | RegulatedInput
    family: ParamFamily
    x0: np.ndarray
    r: float
    M: float = DEFAULT_M
    mesh_schedule: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "x0", np.asarray(self.x0, dtype=float))
        object.__setattr__(self, "mesh_schedule", tuple(float(e) for e in self.mesh_schedule))

    @property
    def has_step_inputs(self) -> bool:
        return isinstance(self.u, StepFn) and isinstance(self.w, StepFn)

    @property
    def interval(self) -> tuple:
        return float(self.u.start), float(self.u.end)

    def w_initial(self):
        if isinstance(self.w, StepFn):
            return self.w.eval(self.w.start)
        return self.w.evaluate(self.w.start)

    def initial_set(self):
        return self.family.set_at(self.w_initial())

    def jump_gauge(self) -> float:
        """Largest combined input jump, using upper Hausdorff brackets."""
        if self.has_step_inputs:
            return max_jump_gauge(self.u, self.w, self.family)
        if isinstance(self.u, StepFn) or isinstance(self.w, StepFn):
            raise ValueError("mix of step and regulated inputs is not supported")
        return max_jump_gauge_regulated(self.u, self.w, self.family)

    def validate(self, tol: float = 1e-9) -> None:
        """Check the problem invariants; raises on violation."""
        if not self.r > 0:
            raise ValueError("prox radius r must be positive")
        if not self.M >= 2.0:
            raise ValueError("jump-safety constant M must be at least 2")
        ua, ub = self.interval
        wa = self.w.start if isinstance(self.w, StepFn) else self.w.start
        wb = self.w.end if isinstance(self.w, StepFn) else self.w.end
        if (ua, ub) != (float(wa), float(wb)):
            raise ValueError("u and w must share the time interval")
        z0 = self.initial_set()
        if z0.r < self.r:
            raise ValueError(
                f"problem radius r={self.r:g} exceeds the set's certified reach {z0.r:g}"
            )
        d0 = z0.distance(self.x0)
        if d0 > tol:
            raise ValueError(f"x0 is not in the initial set (distance {d0:.3e})")
        gauge = self.jump_gauge()
        if not gauge < self.r / self.M:
            raise JumpAdmissibilityError(
                f"jump gauge {gauge:.6g} must be strictly below r/M = {self.r / self.M:.6g}"
            )
        if not self.has_step_inputs and not self.mesh_schedule:
            raise ValueError("regulated inputs need a mesh_schedule of accuracies")

    def with_inputs(self, u, w) -> "SweepProblem":
        return replace(self, u=u, w=w)


@dataclass(frozen=True)
class StepLog:
    """Per-step diagnostics of a catching-up run (arrays indexed by step)."""

    times: np.ndarray
    dxi: np.ndarray
    dx: np.ndarray
    predictor_dist: np.ndarray
    du: np.ndarray
    dh: np.ndarray
    jump_gauge: np.ndarray
    cap_slack: np.ndarray
    state_bound_slack: np.ndarray
    output_bound_slack: np.ndarray

    def __len__(self) -> int:
        return self.times.size


@dataclass(frozen=True)
class SweepSolution:
    """Catching-up output: offset ``xi``, state ``x``, and diagnostics.

    Invariants: ``xi + x = u`` at every breakpoint, ``x(t)`` belongs to the
    current set within tolerance, and the running variation is the
    cumulative sum of ``|xi_j - xi_{j-1}|``.
    """

    xi: StepFn
    x: StepFn
    running_variation: StepFn
    log: StepLog
    problem: SweepProblem = field(repr=False)

    @property
    def times(self) -> np.ndarray:
        return self.xi.times

    @property
    def total_variation(self) -> float:
        return float(self.running_variation.values[-1])
