"""Regulated right-continuous inputs and their step approximation.

A regulated function admits one-sided limits everywhere.  We represent the
right-continuous ones computationally as a total evaluator plus a finite
list of jump times with their left-limit values, plus a uniform continuity
modulus valid away from the listed jumps.  Every computation downstream
consumes step approximants, so finitely many explicit jumps suffice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import ApproximationError
from .stepfunctions import StepFn, vnorm

__all__ = [
    "RegulatedInput",
    "step_approximate",
    "max_jump_gauge",
    "max_jump_gauge_regulated",
]

#: refuse approximation grids beyond this many points
_MAX_GRID = 20_000_000


@dataclass(frozen=True)
class RegulatedInput:
    """Right-continuous regulated function on ``[start, end]``.

    ``evaluate(t)`` must return the right-continuous representative.
    ``jump_times[i]`` lists the discontinuities, ``left_values[i]`` the left
    limits there.  ``modulus(eps)`` returns a ``delta > 0`` such that
    ``|f(t) - f(s)| <= eps`` whenever ``|t - s| <= delta`` and no listed jump
    lies between ``s`` and ``t``.
    """

    evaluate: Callable[[float], object]
    start: float
    end: float
    jump_times: tuple = ()
    left_values: tuple = ()
    modulus: Callable[[float], float] | None = None
    step: StepFn | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.end <= self.start:
            raise ValueError("need start < end")
        if len(self.jump_times) != len(self.left_values):
            raise ValueError("one left value per jump time required")
        ts = list(self.jump_times)
        if ts != sorted(ts) or len(set(ts)) != len(ts):
            raise ValueError("jump times must be strictly increasing")
        for t in ts:
            if not (self.start < t <= self.end):
                raise ValueError("jump times must lie in (start, end]")

    @classmethod
    def from_step(cls, f: StepFn) -> "RegulatedInput":
        """Wrap an existing step function (its approximation is itself)."""
        jt, left, right = f.jumps()
        keep = [
            (float(t), lv)
            for t, lv, rv in zip(jt, left, right)
            if vnorm(np.asarray(rv) - np.asarray(lv)) > 0.0
        ]
        return cls(
            evaluate=f.eval,
            start=f.start,
            end=f.end,
            jump_times=tuple(t for t, _ in keep),
            left_values=tuple(np.asarray(v, dtype=float) for _, v in keep),
            modulus=lambda eps: np.inf,
            step=f,
        )

    @classmethod
    def from_lipschitz(
        cls,
        evaluate: Callable[[float], object],
        start: float,
        end: float,
        constant: float,
        jumps: Sequence[tuple] = (),
    ) -> "RegulatedInput":
        """Continuous-between-jumps input with Lipschitz constant ``constant``."""
        L = float(constant)
        if L < 0:
            raise ValueError("Lipschitz constant must be nonnegative")

        def modulus(eps: float) -> float:
            return np.inf if L == 0 else eps / L

        return cls(
            evaluate=evaluate,
            start=start,
            end=end,
            jump_times=tuple(float(t) for t, _ in jumps),
            left_values=tuple(np.asarray(v, dtype=float) for _, v in jumps),
            modulus=modulus,
        )

    def left_limit(self, t: float):
        """Left limit; exact at listed jumps, evaluator value elsewhere."""
        t = float(t)
        for jt, lv in zip(self.jump_times, self.left_values):
            if jt == t:
                return lv
        return self.evaluate(t)

    def jump_magnitudes(self) -> np.ndarray:
        return np.asarray(
            [
                vnorm(np.asarray(self.evaluate(t)) - np.asarray(lv))
                for t, lv in zip(self.jump_times, self.left_values)
            ]
        )


def step_approximate(f: RegulatedInput, eps: float) -> StepFn:
    """Right-continuous step approximant ``g`` with ``sup |f - g| <= eps``.

    Every listed jump time of ``f`` is a breakpoint of ``g`` and the jump of
    ``g`` there equals the jump of ``f`` exactly: the plateau immediately
    before a listed jump carries the stored left-limit value, all other
    plateaus are samples of ``f`` at spacing certified by the continuity
    modulus.  Consequently jump magnitudes of ``g`` never exceed those of
    ``f``, and between jumps they stay below ``eps``.  If ``f`` wraps a step
    function, that function is returned unchanged.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if f.step is not None:
        return f.step
    if f.modulus is None:
        raise ApproximationError("input has no continuity modulus")
    delta = float(f.modulus(eps))
    if not (delta > 0):
        raise ApproximationError(f"modulus returned a non-positive spacing for eps={eps:g}")

    jumps = {float(t): lv for t, lv in zip(f.jump_times, f.left_values)}
    anchors = [f.start, *f.jump_times]
    if anchors[-1] != f.end:
        anchors.append(f.end)
    times = [f.start]
    values = [np.asarray(f.evaluate(f.start), dtype=float)]
    for a, b in zip(anchors[:-1], anchors[1:]):
        if np.isinf(delta):
            pieces = 1
        else:
            pieces = int(np.ceil((b - a) / delta))
        if b in jumps:
            # keep the left-limit plateau separate from the sample at a
            pieces = max(pieces, 2)
        if pieces > _MAX_GRID or len(times) + pieces > _MAX_GRID:
            raise ApproximationError(
                f"approximation at eps={eps:g} needs more than {_MAX_GRID} plateaus"
            )
        for k in range(1, pieces):
            t = a + (b - a) * (k / pieces)
            times.append(t)
            values.append(np.asarray(f.evaluate(t), dtype=float))
        if b in jumps:
            values[-1] = np.asarray(jumps[b], dtype=float)
        times.append(b)
        values.append(np.asarray(f.evaluate(b), dtype=float))
    return StepFn(np.asarray(times), np.asarray(values))


def _family_gap(family, w_left, w_right) -> float:
    """Upper estimate of the Hausdorff distance between Z(w_left) and Z(w_right)."""
    w_left = np.asarray(w_left, dtype=float)
    w_right = np.asarray(w_right, dtype=float)
    if w_left.shape == w_right.shape and np.array_equal(w_left, w_right):
        return 0.0
    return float(family.hausdorff(w_left, w_right).hi)


def max_jump_gauge(u: StepFn, w: StepFn, family) -> float:
    """Largest combined jump ``d_H(Z(w(t)), Z(w(t-))) + |u(t) - u(t-)|``.

    The supremum runs over ``t`` in ``(start, end]``; for step inputs it is
    attained at a merged breakpoint.  Hausdorff terms use the family's upper
    bracket so the gauge is safe for admissibility checks.
    """
    if u.start != w.start or u.end != w.end:
        raise ValueError("u and w must share the interval")
    t = np.union1d(u.times, w.times)
    uv = u.eval_many(t)
    wv = w.eval_many(t)
    gauge = 0.0
    for j in range(1, t.size):
        du = vnorm(np.asarray(uv[j]) - np.asarray(uv[j - 1]))
        dh = _family_gap(family, wv[j - 1], wv[j])
        gauge = max(gauge, du + dh)
    return gauge


def max_jump_gauge_regulated(u: RegulatedInput, w: RegulatedInput, family) -> float:
    """Jump gauge of regulated inputs, computed from their listed jumps."""
    times = sorted(set(u.jump_times) | set(w.jump_times))
    gauge = 0.0
    for t in times:
        du = vnorm(np.asarray(u.evaluate(t)) - np.asarray(u.left_limit(t)))
        dh = _family_gap(family, w.left_limit(t), w.evaluate(t))
        gauge = max(gauge, du + dh)
    return gauge
