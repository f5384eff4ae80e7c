"""Construction of inputs, sets, and families from scenario configuration.

Each builder consumes a plain dict (one ``kind`` key plus parameters) so
scenarios stay diffable text files.  Input builders return step functions
sampled right-continuously, or regulated inputs for the refinement-study
kinds.
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import ConfigError
from ..proxgeom import (
    Ball,
    BallComplement,
    Box,
    ConcentricBallFamily,
    Crescent,
    CuspPair,
    FixedFamily,
    HalfSpace,
    InteriorParams,
    RotationFamily,
    TranslationFamily,
    TwoBallsUnion,
)
from ..regulated import RegulatedInput
from ..stepfunctions import StepFn

__all__ = ["build_set", "build_family", "build_input", "SET_KINDS", "INPUT_KINDS"]


def _need(params: dict, key: str, kind: str):
    if key not in params:
        raise ConfigError(f"missing '{key}'", field=kind)
    return params[key]


# -- sets ---------------------------------------------------------------------


def build_set(spec: dict):
    kind = _need(spec, "kind", "set")
    if kind == "ball":
        return Ball(_need(spec, "center", kind), _need(spec, "radius", kind), r=spec.get("r", math.inf))
    if kind == "box":
        return Box(_need(spec, "lo", kind), _need(spec, "hi", kind), r=spec.get("r", math.inf))
    if kind == "halfspace":
        return HalfSpace(
            _need(spec, "normal", kind), _need(spec, "offset", kind), r=spec.get("r", math.inf)
        )
    if kind == "ball_complement":
        return BallComplement(_need(spec, "center", kind), _need(spec, "radius", kind))
    if kind == "two_balls":
        return TwoBallsUnion(
            _need(spec, "center1", kind),
            _need(spec, "radius1", kind),
            _need(spec, "center2", kind),
            _need(spec, "radius2", kind),
        )
    if kind == "crescent":
        return Crescent(
            _need(spec, "center", kind),
            _need(spec, "radius", kind),
            _need(spec, "hole_center", kind),
            _need(spec, "hole_radius", kind),
            r=_need(spec, "r", kind),
        )
    if kind == "cusp":
        return CuspPair(spec.get("disc_radius", 1.0))
    raise ConfigError(f"unknown set kind '{kind}'", field="set")


SET_KINDS = ("ball", "box", "halfspace", "ball_complement", "two_balls", "crescent", "cusp")


def _interior(spec: dict | None):
    if spec is None:
        return None
    return InteriorParams(rho=float(spec["rho"]), R=float(spec["R"]))


def build_family(spec: dict):
    kind = _need(spec, "kind", "family")
    if kind == "fixed":
        return FixedFamily(build_set(_need(spec, "set", kind)), interior=_interior(spec.get("interior")))
    if kind == "concentric_balls":
        return ConcentricBallFamily(_need(spec, "center", kind), r=spec.get("r", math.inf))
    if kind == "translation":
        return TranslationFamily(
            build_set(_need(spec, "set", kind)), interior=_interior(spec.get("interior"))
        )
    if kind == "rotation":
        return RotationFamily(
            build_set(_need(spec, "set", kind)),
            pivot=spec.get("pivot", (0.0, 0.0)),
            radius_bound=spec.get("radius_bound"),
            interior=_interior(spec.get("interior")),
        )
    raise ConfigError(f"unknown family kind '{kind}'", field="family")


# -- inputs -------------------------------------------------------------------


def _triangle(s: np.ndarray) -> np.ndarray:
    """Unit triangle wave with period 1: 0 -> 1 -> -1 -> 0."""
    frac = s - np.floor(s + 0.25)
    return 4.0 * np.abs(frac - 0.25) - 1.0


def _uniform_times(T: float, steps: int) -> np.ndarray:
    return np.linspace(0.0, T, int(steps) + 1)


def build_input(spec: dict, T: float):
    kind = _need(spec, "kind", "input")

    if kind == "constant":
        value = np.asarray(_need(spec, "value", kind), dtype=float)
        return StepFn.constant(value, 0.0, T)

    if kind == "steps":
        times = np.asarray(_need(spec, "times", kind), dtype=float)
        values = np.asarray(_need(spec, "values", kind), dtype=float)
        if times[0] != 0.0 or times[-1] != T:
            raise ConfigError("explicit step times must run from 0 to T", field=kind)
        return StepFn(times, values)

    if kind == "triangle_wave":
        amplitude = float(_need(spec, "amplitude", kind))
        periods = float(_need(spec, "periods", kind))
        steps = int(_need(spec, "steps", kind))
        dim = int(spec.get("dim", 1))
        axis = int(spec.get("axis", 0))
        times = _uniform_times(T, steps)
        wave = amplitude * _triangle(times / T * periods)
        values = np.zeros((times.size, dim))
        values[:, axis] = wave
        return StepFn(times, values)

    if kind == "piecewise_linear":
        points = np.asarray(_need(spec, "points", kind), dtype=float)
        mesh = float(_need(spec, "mesh", kind))
        knots, vals = points[:, 0], points[:, 1:]
        if knots[0] != 0.0 or knots[-1] != T:
            raise ConfigError("knots must run from 0 to T", field=kind)
        times = _uniform_times(T, max(1, int(round(T / mesh))))
        cols = [np.interp(times, knots, vals[:, i]) for i in range(vals.shape[1])]
        return StepFn(times, np.stack(cols, axis=1))

    if kind == "tangential_oscillation":
        eta = float(_need(spec, "eta", kind))
        drift = float(_need(spec, "drift", kind))
        count = int(_need(spec, "count", kind))
        m = 2 * count
        times = _uniform_times(T, m)
        j = np.arange(m + 1)
        values = np.stack([-drift * j / m, eta * np.where(j % 2 == 0, 1.0, -1.0)], axis=1)
        return StepFn(times, values)

    if kind == "cusp_oscillation":
        eta = float(_need(spec, "eta", kind))
        count = int(_need(spec, "count", kind))
        times = _uniform_times(T, count)
        j = np.arange(count + 1)
        y = eta * np.where(j % 2 == 1, 1.0, -1.0)
        y[0] = 0.0
        return StepFn(times, np.stack([np.zeros(count + 1), y], axis=1))

    if kind == "drag_rotate":
        press = float(_need(spec, "press", kind))
        angle_total = float(_need(spec, "angle_total", kind))
        t_split = float(_need(spec, "t_split", kind))
        mesh = float(_need(spec, "mesh", kind))
        times = _uniform_times(T, max(1, int(round(T / mesh))))

        def path(t):
            if t <= t_split:
                return np.array([-press * t / t_split, 0.0])
            phi = angle_total * (t - t_split) / (T - t_split)
            return np.array([-press * math.cos(phi), -press * math.sin(phi)])

        return StepFn.from_samples(times, path)

    if kind == "zigzag2d":
        amplitude = float(_need(spec, "amplitude", kind))
        periods = float(_need(spec, "periods", kind))

        def evaluate(t):
            s = t / T * periods
            return amplitude * np.array(
                [float(_triangle(np.asarray(s))), float(_triangle(np.asarray(s + 0.25)))]
            )

        lipschitz = 4.0 * amplitude * periods / T * math.sqrt(2.0)
        return RegulatedInput.from_lipschitz(evaluate, 0.0, T, lipschitz)

    if kind == "ramp":
        lo = float(_need(spec, "from", kind))
        hi = float(_need(spec, "to", kind))

        def evaluate(t):
            return lo + (hi - lo) * t / T

        return RegulatedInput.from_lipschitz(evaluate, 0.0, T, abs(hi - lo) / T)

    if kind == "ramp_steps":
        lo = float(_need(spec, "from", kind))
        hi = float(_need(spec, "to", kind))
        steps = int(_need(spec, "steps", kind))
        times = _uniform_times(T, steps)
        return StepFn(times, lo + (hi - lo) * np.arange(steps + 1) / steps)

    raise ConfigError(f"unknown input kind '{kind}'", field="input")


INPUT_KINDS = (
    "constant",
    "steps",
    "triangle_wave",
    "piecewise_linear",
    "tangential_oscillation",
    "cusp_oscillation",
    "drag_rotate",
    "zigzag2d",
    "ramp",
    "ramp_steps",
)
