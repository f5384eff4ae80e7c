"""Built-in scenario catalog, one scenario per mechanism exercised.

``play1d``                    fixed convex interval, classical hysteresis staircase
``ball_complement_drag``      drag and full revolution against a nonconvex hole,
                              absolutely continuous inputs, dependence study
``ball_complement_oscillation`` bounded output variation under unbounded input
                              variation (interior mechanism)
``rotating_crescent``         refinement convergence for regulated inputs
``two_balls_transfer``        disconnected constraint, small-gap reach
``cusp_negative``             interior condition violated: output tracks input
``bv_case_two``               Lipschitz family of concentric balls with input jumps
"""

from __future__ import annotations

import copy

__all__ = ["catalog_names", "get_scenario", "CATALOG"]


CATALOG: dict = {
    "play1d": {
        "schema_version": 1,
        "name": "play1d",
        "seed": 20250801,
        "T": 1.0,
        "problem": {
            "r": 1.0,
            "M": None,
            "x0": [0.0],
            "family": {"kind": "fixed", "set": {"kind": "box", "lo": [-1.0], "hi": [1.0]}},
            "u": {
                "kind": "triangle_wave",
                "amplitude": 3.0,
                "periods": 100.0,
                "steps": 10000,
                "dim": 1,
                "axis": 0,
            },
            "w": {"kind": "constant", "value": 0.0},
        },
        "experiments": [
            {"kind": "solve"},
            {"kind": "residuals", "z_per_step": 3, "test_functions": 4},
        ],
        "output": {"formats": ["csv", "svg"]},
    },
    "ball_complement_drag": {
        "schema_version": 1,
        "name": "ball_complement_drag",
        "seed": 20250802,
        "T": 1.0,
        "problem": {
            "r": 1.0,
            "M": None,
            "x0": [1.0, 0.0],
            "family": {
                "kind": "fixed",
                "set": {"kind": "ball_complement", "center": [0.0, 0.0], "radius": 1.0},
                "interior": {"rho": 0.1, "R": 3.2},
            },
            "u": {
                "kind": "drag_rotate",
                "press": 0.5,
                "angle_total": 6.283185307179586,
                "t_split": 0.3,
                "mesh": 0.001,
            },
            "w": {"kind": "constant", "value": 0.0},
        },
        "experiments": [
            {"kind": "solve"},
            {"kind": "residuals", "z_per_step": 3, "test_functions": 4},
            {"kind": "ac_residual", "sample_count": 200, "z_per_time": 8, "blocks": 10},
            {
                "kind": "continuous_dependence",
                "deltas": [0.1, 0.05, 0.025, 0.0125],
                "direction": [0.0, 1.0],
            },
        ],
        "output": {"formats": ["csv", "svg"]},
    },
    "ball_complement_oscillation": {
        "schema_version": 1,
        "name": "ball_complement_oscillation",
        "seed": 20250803,
        "T": 1.0,
        "problem": {
            "r": 1.0,
            "M": None,
            "x0": [1.0, 0.0],
            "family": {
                "kind": "fixed",
                "set": {"kind": "ball_complement", "center": [0.0, 0.0], "radius": 1.0},
                "interior": {"rho": 0.1, "R": 3.2},
            },
            "u": {"kind": "tangential_oscillation", "eta": 0.04, "drift": 0.03, "count": 10000},
            "w": {"kind": "constant", "value": 0.0},
        },
        "experiments": [
            {"kind": "solve"},
            {"kind": "variation_audit", "windows": [[0, 20000]]},
            {"kind": "residuals", "z_per_step": 2, "test_functions": 2},
        ],
        "output": {"formats": ["csv", "svg"]},
    },
    "rotating_crescent": {
        "schema_version": 1,
        "name": "rotating_crescent",
        "seed": 20250804,
        "T": 1.0,
        "problem": {
            "r": 0.35,
            "M": None,
            "x0": [0.55, 0.62],
            "family": {
                "kind": "rotation",
                "set": {
                    "kind": "crescent",
                    "center": [0.0, 0.0],
                    "radius": 1.0,
                    "hole_center": [1.2, 0.0],
                    "hole_radius": 0.8,
                    "r": 0.35,
                },
                "pivot": [0.0, 0.0],
                "radius_bound": 1.0,
            },
            "u": {"kind": "zigzag2d", "amplitude": 0.02, "periods": 2.3},
            "w": {"kind": "ramp", "from": 0.0, "to": 0.6},
            "mesh_schedule": [0.008, 0.004, 0.002, 0.001, 0.0005, 0.00025],
        },
        "experiments": [{"kind": "refinement"}],
        "output": {"formats": ["csv", "svg"]},
    },
    "two_balls_transfer": {
        "schema_version": 1,
        "name": "two_balls_transfer",
        "seed": 20250805,
        "T": 1.0,
        "problem": {
            "r": 1.0,
            "M": None,
            "x0": [-1.0, 0.0],
            "family": {
                "kind": "fixed",
                "set": {
                    "kind": "two_balls",
                    "center1": [-2.0, 0.0],
                    "radius1": 1.0,
                    "center2": [2.0, 0.0],
                    "radius2": 1.0,
                },
            },
            "u": {
                "kind": "piecewise_linear",
                "points": [[0.0, 0.0, 0.0], [0.4, 0.3, 0.0], [1.0, 0.3, 0.8]],
                "mesh": 0.005,
            },
            "w": {"kind": "constant", "value": 0.0},
        },
        "experiments": [
            {"kind": "solve"},
            {"kind": "residuals", "z_per_step": 4, "test_functions": 4},
        ],
        "output": {"formats": ["csv", "svg"]},
    },
    "cusp_negative": {
        "schema_version": 1,
        "name": "cusp_negative",
        "seed": 20250806,
        "T": 1.0,
        "problem": {
            "r": 1.0,
            "M": None,
            "x0": [0.0, 0.0],
            "family": {"kind": "fixed", "set": {"kind": "cusp", "disc_radius": 1.0}},
            "u": {"kind": "cusp_oscillation", "eta": 0.05, "count": 10000},
            "w": {"kind": "constant", "value": 0.0},
        },
        "experiments": [{"kind": "solve"}, {"kind": "negative_control"}],
        "output": {"formats": ["csv", "svg"]},
    },
    "bv_case_two": {
        "schema_version": 1,
        "name": "bv_case_two",
        "seed": 20250807,
        "T": 1.0,
        "problem": {
            "r": 1.0,
            "M": None,
            "x0": [0.95, 0.0],
            "family": {"kind": "concentric_balls", "center": [0.0, 0.0]},
            "u": {
                "kind": "steps",
                "times": [0.0, 0.3, 0.6, 1.0],
                "values": [[0.0, 0.0], [0.1, 0.0], [0.1, -0.15], [0.2, -0.15]],
            },
            "w": {"kind": "ramp_steps", "from": 1.0, "to": 0.8, "steps": 50},
        },
        "experiments": [
            {"kind": "solve"},
            {"kind": "residuals", "z_per_step": 6, "test_functions": 6},
        ],
        "output": {"formats": ["csv", "svg"]},
    },
}


def catalog_names() -> list:
    return sorted(CATALOG)


def get_scenario(name: str) -> dict:
    if name not in CATALOG:
        raise KeyError(f"unknown scenario '{name}'; known: {', '.join(catalog_names())}")
    return copy.deepcopy(CATALOG[name])
