"""Scenario configuration: schema, parsing, and static validation.

A scenario is one JSON document (nested keys, diffable) with a mandatory
``schema_version``, a mandatory ``seed``, a problem block, and a list of
experiments.  ``validate_config`` performs every static precondition check
the experiments rely on, without solving anything.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError, JumpAdmissibilityError
from ..regulated import RegulatedInput
from ..stepfunctions import StepFn, vnorm
from ..sweeper import DEFAULT_M, SweepProblem
from ..sweeper.diagnostics import variation_bound
from .builders import build_family, build_input

__all__ = ["SCHEMA_VERSION", "ValidationIssue", "ValidationReport", "parse_config", "build_problem", "validate_config", "config_hash"]

SCHEMA_VERSION = 1

EXPERIMENT_KINDS = (
    "solve",
    "residuals",
    "variation_audit",
    "continuous_dependence",
    "refinement",
    "ac_residual",
    "negative_control",
)


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str


@dataclass
class ValidationReport:
    scenario: str
    issues: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def add(self, code: str, message: str) -> None:
        self.issues.append(ValidationIssue(code, message))

    def __str__(self) -> str:
        if self.ok:
            return f"{self.scenario}: OK"
        lines = [f"{self.scenario}: {len(self.issues)} issue(s)"]
        lines += [f"  [{i.code}] {i.message}" for i in self.issues]
        return "\n".join(lines)


def config_hash(cfg: dict) -> str:
    canonical = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def parse_config(cfg: dict) -> dict:
    """Structural checks; raises :class:`ConfigError` naming the bad field."""
    if not isinstance(cfg, dict):
        raise ConfigError("configuration must be a JSON object")
    if cfg.get("schema_version") != SCHEMA_VERSION:
        raise ConfigError(f"schema_version must be {SCHEMA_VERSION}", field="schema_version")
    for key in ("name", "seed", "problem", "experiments"):
        if key not in cfg:
            raise ConfigError("missing required key", field=key)
    if not isinstance(cfg["seed"], int):
        raise ConfigError("seed must be an integer (seeds are mandatory)", field="seed")
    prob = cfg["problem"]
    for key in ("r", "x0", "family", "u", "w"):
        if key not in prob:
            raise ConfigError("missing required key", field=f"problem.{key}")
    for i, exp in enumerate(cfg["experiments"]):
        kind = exp.get("kind")
        if kind not in EXPERIMENT_KINDS:
            raise ConfigError(
                f"unknown experiment kind '{kind}' (known: {', '.join(EXPERIMENT_KINDS)})",
                field=f"experiments[{i}]",
            )
    return cfg


def build_problem(cfg: dict) -> SweepProblem:
    prob = cfg["problem"]
    T = float(cfg.get("T", 1.0))
    family = build_family(prob["family"])
    u = build_input(prob["u"], T)
    w = build_input(prob["w"], T)
    m_val = prob.get("M")
    return SweepProblem(
        u=u,
        w=w,
        family=family,
        x0=np.asarray(prob["x0"], dtype=float),
        r=float(prob["r"]),
        M=DEFAULT_M if m_val is None else float(m_val),
        mesh_schedule=tuple(prob.get("mesh_schedule", ())),
    )


def validate_config(cfg: dict) -> ValidationReport:
    """Static validation: problem invariants plus per-experiment preconditions."""
    cfg = parse_config(cfg)
    report = ValidationReport(scenario=cfg["name"])
    try:
        problem = build_problem(cfg)
    except (ConfigError, ValueError) as exc:
        report.add("build", str(exc))
        return report

    try:
        problem.validate()
    except JumpAdmissibilityError as exc:
        report.add("jump-gauge", str(exc))
    except ValueError as exc:
        report.add("invariant", str(exc))

    for i, exp in enumerate(cfg["experiments"]):
        kind = exp["kind"]
        where = f"experiments[{i}] ({kind})"
        if kind in ("variation_audit", "continuous_dependence") and problem.family.interior is None:
            report.add("interior", f"{where}: family has no interior parameters")
        if kind == "variation_audit" and problem.family.interior is not None:
            try:
                rho, R = problem.family.interior.rho, problem.family.interior.R
                variation_bound(problem.r, rho, R)
            except ValueError as exc:
                report.add("interior", f"{where}: {exc}")
            if problem.has_step_inputs:
                _check_windows(problem, exp.get("windows", []), report, where)
        if kind == "ac_residual" and problem.family.lipschitz is None:
            report.add("lipschitz", f"{where}: family has no Lipschitz Hausdorff modulus")
        if kind == "refinement":
            if problem.has_step_inputs:
                report.add("refinement", f"{where}: inputs are already step functions")
            elif not problem.mesh_schedule:
                report.add("refinement", f"{where}: problem.mesh_schedule is empty")
        if kind == "continuous_dependence":
            if not exp.get("deltas"):
                report.add("dependence", f"{where}: needs a nonempty 'deltas' list")
    return report


def _check_windows(problem: SweepProblem, windows, report: ValidationReport, where: str) -> None:
    if not windows:
        report.add("windows", f"{where}: needs a nonempty 'windows' list")
        return
    rho = problem.family.interior.rho
    times = np.union1d(problem.u.times, problem.w.times)
    uv = problem.u.eval_many(times)
    uv = uv if uv.ndim == 2 else uv[:, None]
    wv = np.asarray(problem.w.eval_many(times))
    for j0, j1 in windows:
        if not (0 <= j0 < j1 <= times.size - 1):
            report.add("windows", f"{where}: window ({j0}, {j1}) outside mesh of size {times.size}")
            continue
        for j in range(j0 + 1, j1 + 1):
            drift = vnorm(uv[j] - uv[j0])
            if not np.array_equal(wv[j], wv[j0]):
                drift += problem.family.hausdorff(wv[j0], wv[j]).hi
            if drift > rho:
                report.add(
                    "windows",
                    f"{where}: window ({j0}, {j1}) drift {drift:.4g} exceeds rho={rho:g} at index {j}",
                )
                break
