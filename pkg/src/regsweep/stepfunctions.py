"""Right-continuous step functions on a closed interval.

A step function is stored as strictly increasing breakpoints
``t_0 < t_1 < ... < t_m`` together with one value per breakpoint:
``values[j]`` is the constant value on ``[t_j, t_{j+1})`` for ``j < m`` and
``values[m]`` is the value at the right endpoint ``{t_m}``.  The value at the
endpoint is stored separately because Stieltjes-type integrals treat the
right endpoint of the interval specially.

Values are either scalars (``values.ndim == 1``) or vectors in R^n
(``values.ndim == 2``).  All instances are immutable; meshes are combined by
merging breakpoint arrays exactly, never by floating-point arithmetic on
increments, so refinements introduce no spurious micro-plateaus.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "StepFn",
    "Variation",
    "total_variation",
    "sup_distance",
    "merge_times",
    "align",
    "step_to_csv",
    "step_from_csv",
]


def _as_times(times) -> np.ndarray:
    t = np.ascontiguousarray(times, dtype=float)
    if t.ndim != 1:
        raise ValueError("breakpoints must be a one-dimensional array")
    if t.size < 2:
        raise ValueError("need at least two breakpoints (interval endpoints)")
    if not np.all(np.diff(t) > 0.0):
        raise ValueError("breakpoints must be strictly increasing")
    return t


def vnorm(v) -> float:
    """Euclidean norm of a scalar or vector value."""
    return float(np.linalg.norm(v))


class StepFn:
    """Right-continuous step function on ``[start, end]``."""

    __slots__ = ("times", "values")

    def __init__(self, times, values):
        t = _as_times(times)
        v = np.ascontiguousarray(values, dtype=float)
        if v.ndim not in (1, 2):
            raise ValueError("values must be scalars or vectors")
        if v.shape[0] != t.shape[0]:
            raise ValueError(
                f"{t.shape[0]} breakpoints need {t.shape[0]} values, got {v.shape[0]}"
            )
        t.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("StepFn is immutable")

    # -- basic queries ----------------------------------------------------

    @property
    def start(self) -> float:
        return float(self.times[0])

    @property
    def end(self) -> float:
        return float(self.times[-1])

    @property
    def is_scalar(self) -> bool:
        return self.values.ndim == 1

    @property
    def dim(self) -> int:
        return 1 if self.is_scalar else int(self.values.shape[1])

    def __repr__(self) -> str:
        return (
            f"StepFn([{self.start:g}, {self.end:g}], "
            f"{self.times.size - 1} plateaus, dim={self.dim})"
        )

    def _check_inside(self, t: float) -> float:
        t = float(t)
        if not (self.start <= t <= self.end):
            raise ValueError(f"t={t:g} outside [{self.start:g}, {self.end:g}]")
        return t

    def _index_right(self, ts) -> np.ndarray:
        idx = np.searchsorted(self.times, ts, side="right") - 1
        return np.clip(idx, 0, self.times.size - 1)

    def eval(self, t: float):
        """Value of the right-continuous representative at ``t``."""
        t = self._check_inside(t)
        return self.values[int(self._index_right(t))]

    __call__ = eval

    def eval_many(self, ts) -> np.ndarray:
        """Vectorised :meth:`eval`; ``ts`` must lie inside the interval."""
        ts = np.asarray(ts, dtype=float)
        if ts.size and (ts.min() < self.start or ts.max() > self.end):
            raise ValueError("evaluation points outside the interval")
        return self.values[self._index_right(ts)]

    def left_limit(self, t: float):
        """Left limit ``f(t-)``, with the convention ``f(start-) = f(start)``."""
        t = self._check_inside(t)
        idx = int(np.searchsorted(self.times, t, side="left")) - 1
        return self.values[max(idx, 0)]

    def jumps(self):
        """Breakpoints ``t_1..t_m`` with left and right values there.

        Returns ``(times, left, right)`` where ``right - left`` is the jump.
        Includes breakpoints where the jump happens to be zero.
        """
        return self.times[1:], self.values[:-1], self.values[1:]

    # -- construction helpers ---------------------------------------------

    @classmethod
    def constant(cls, value, start: float = 0.0, end: float = 1.0) -> "StepFn":
        v = np.asarray(value, dtype=float)
        return cls(np.array([start, end]), np.stack([v, v]))

    @classmethod
    def from_samples(cls, times, sampler: Callable[[float], object]) -> "StepFn":
        """Step function taking the value ``sampler(t_j)`` on ``[t_j, t_{j+1})``."""
        t = _as_times(times)
        vals = np.asarray([np.asarray(sampler(tj), dtype=float) for tj in t])
        return cls(t, vals)

    # -- mesh operations ---------------------------------------------------

    def refine(self, times) -> "StepFn":
        """Same function on a finer mesh; ``times`` must contain all breakpoints."""
        t = _as_times(times)
        if t[0] != self.start or t[-1] != self.end:
            raise ValueError("refinement must keep the interval endpoints")
        missing = np.setdiff1d(self.times, t)
        if missing.size:
            raise ValueError(f"refinement drops breakpoints {missing!r}")
        return StepFn(t, self.eval_many(t))

    def restrict(self, a: float, b: float) -> "StepFn":
        """Restriction to ``[a, b]``; ``a`` and ``b`` must be breakpoints."""
        a, b = float(a), float(b)
        if not (self.start <= a < b <= self.end):
            raise ValueError("need start <= a < b <= end")
        for c in (a, b):
            if not np.any(self.times == c):
                raise ValueError(f"{c:g} is not a breakpoint")
        mask = (self.times >= a) & (self.times <= b)
        return StepFn(self.times[mask], self.values[mask])

    # -- algebra ------------------------------------------------------------

    def _binary(self, other: "StepFn", op) -> "StepFn":
        t = merge_times(self, other)
        return StepFn(t, op(self.eval_many(t), other.eval_many(t)))

    def __add__(self, other):
        if not isinstance(other, StepFn):
            return NotImplemented
        return self._binary(other, np.add)

    def __sub__(self, other):
        if not isinstance(other, StepFn):
            return NotImplemented
        return self._binary(other, np.subtract)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return StepFn(self.times, self.values * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return StepFn(self.times, -self.values)

    def norm(self) -> "StepFn":
        """Pointwise Euclidean norm, as a scalar step function."""
        if self.is_scalar:
            return StepFn(self.times, np.abs(self.values))
        return StepFn(self.times, np.linalg.norm(self.values, axis=1))

    def map_values(self, fn) -> "StepFn":
        return StepFn(self.times, np.asarray([fn(v) for v in self.values]))

    def sup_norm(self) -> float:
        if self.is_scalar:
            return float(np.max(np.abs(self.values)))
        return float(np.max(np.linalg.norm(self.values, axis=1)))


def merge_times(*fns: StepFn) -> np.ndarray:
    """Union of the breakpoint arrays of step functions on a common interval."""
    if not fns:
        raise ValueError("need at least one step function")
    a, b = fns[0].start, fns[0].end
    for f in fns[1:]:
        if f.start != a or f.end != b:
            raise ValueError("step functions live on different intervals")
    t = fns[0].times
    for f in fns[1:]:
        t = np.union1d(t, f.times)
    return t


def align(f: StepFn, g: StepFn):
    """Common mesh and both value arrays on it."""
    t = merge_times(f, g)
    return t, f.eval_many(t), g.eval_many(t)


@dataclass(frozen=True)
class Variation:
    """Total variation together with the running variation ``t -> Var_[start,t]``."""

    total: float
    running: StepFn


def total_variation(f: StepFn) -> Variation:
    """Total variation of a step function.

    For step functions the supremum over divisions is attained on the
    breakpoint division, so the total is the plain sum of jump magnitudes,
    including the jump into the final point.
    """
    diffs = np.diff(f.values, axis=0)
    if f.is_scalar:
        steps = np.abs(diffs)
    else:
        steps = np.linalg.norm(diffs, axis=1)
    running = np.concatenate([[0.0], np.cumsum(steps)])
    return Variation(total=float(running[-1]), running=StepFn(f.times, running))


def sup_distance(f: StepFn, g: StepFn) -> float:
    """Exact sup-norm distance between two step functions.

    Evaluated over the merged breakpoint set; for step functions the
    supremum is attained there.
    """
    _, fv, gv = align(f, g)
    d = fv - gv
    if d.ndim == 1:
        return float(np.max(np.abs(d)))
    return float(np.max(np.linalg.norm(d, axis=1)))


# -- CSV serialization ------------------------------------------------------
#
# Column order is part of the public contract: first column is the
# breakpoint time "t", then one column per value component.  Row j carries
# the value on [t_j, t_{j+1}); the last row carries the value at the right
# endpoint.


def _fmt(x: float) -> str:
    return repr(float(x))


def step_to_csv(f: StepFn, labels: Sequence[str] | None = None) -> str:
    n = f.dim
    if labels is None:
        labels = ["v"] if f.is_scalar else [f"v{i}" for i in range(n)]
    if len(labels) != n:
        raise ValueError("one label per value component required")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", *labels])
    vals = f.values if not f.is_scalar else f.values[:, None]
    for t, row in zip(f.times, vals):
        writer.writerow([_fmt(t), *(_fmt(x) for x in row)])
    return buf.getvalue()


def step_from_csv(text: str, scalar: bool | None = None) -> StepFn:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0][0] != "t":
        raise ValueError("expected a header row starting with 't'")
    ncols = len(rows[0]) - 1
    data = np.asarray([[float(x) for x in row] for row in rows[1:]])
    times, values = data[:, 0], data[:, 1:]
    if scalar is None:
        scalar = ncols == 1
    if scalar:
        if ncols != 1:
            raise ValueError("scalar step function needs exactly one value column")
        return StepFn(times, values[:, 0])
    return StepFn(times, values)
