"""Scenario execution: experiments, artifact emission, and run records.

Runs are deterministic by construction: seeds are mandatory, randomness
flows through per-experiment generators derived from the scenario seed,
and CSV floats are written with shortest round-trip representation, so a
re-run with the same configuration reproduces identical bytes.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ConfigError
from ..stepfunctions import StepFn, sup_distance, total_variation
from ..sweeper import (
    SweepProblem,
    SweepSolution,
    TestBudget,
    ac_residual,
    catching_up,
    continuous_dependence_study,
    residuals,
    solve,
    variation_audit,
)
from .catalog import CATALOG, get_scenario
from .config import build_problem, config_hash, validate_config
from .svgplot import emit_plot

__all__ = ["ExperimentOutcome", "RunRecord", "load_config", "verify", "run"]


def _fmt(x) -> str:
    return repr(float(x))


@dataclass
class ExperimentOutcome:
    kind: str
    status: str
    metrics: dict = field(default_factory=dict)
    artifacts: list = field(default_factory=list)


@dataclass
class RunRecord:
    scenario: str
    seed: int
    config_hash: str
    experiments: list
    artifacts: dict
    fitted_constants: dict

    @property
    def ok(self) -> bool:
        return all(e.status in ("ok", "passed-negative") for e in self.experiments)

    def to_json(self) -> str:
        payload = {
            "schema_version": 1,
            "scenario": self.scenario,
            "seed": self.seed,
            "config_hash": self.config_hash,
            "experiments": [asdict(e) for e in self.experiments],
            "artifacts": self.artifacts,
            "fitted_constants": self.fitted_constants,
            "ok": self.ok,
        }
        return json.dumps(payload, sort_keys=True, indent=1)


def load_config(ref) -> dict:
    """Load a scenario from a JSON file path or a built-in catalog name."""
    if isinstance(ref, dict):
        return ref
    p = Path(ref)
    if p.exists():
        try:
            return json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in {p}: line {exc.lineno}, column {exc.colno}")
    if str(ref) in CATALOG:
        return get_scenario(str(ref))
    raise ConfigError(f"'{ref}' is neither a file nor a catalog scenario")


def verify(ref):
    """Static validation of a scenario; returns the report, solves nothing."""
    return validate_config(load_config(ref))


# -- CSV writers (column orders are part of the public contract) --------------


def _write_csv(path: Path, header, rows) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    path.write_text(buf.getvalue())


def _solution_csv(path: Path, sol: SweepSolution) -> None:
    xi, x, v = sol.xi, sol.x, sol.running_variation
    n = xi.dim
    header = ["t"] + [f"xi{i}" for i in range(n)] + [f"x{i}" for i in range(n)] + ["var_xi"]
    xiv = xi.values if not xi.is_scalar else xi.values[:, None]
    xv = x.values if not x.is_scalar else x.values[:, None]
    rows = [
        [_fmt(t), *(_fmt(a) for a in xiv[j]), *(_fmt(b) for b in xv[j]), _fmt(v.values[j])]
        for j, t in enumerate(xi.times)
    ]
    _write_csv(path, header, rows)


def _steps_csv(path: Path, sol: SweepSolution) -> None:
    log = sol.log
    header = [
        "step",
        "t",
        "dxi",
        "dx",
        "predictor_dist",
        "du",
        "dh",
        "jump_gauge",
        "cap_slack",
        "state_bound_slack",
        "output_bound_slack",
    ]
    rows = [
        [
            str(j + 1),
            _fmt(log.times[j]),
            _fmt(log.dxi[j]),
            _fmt(log.dx[j]),
            _fmt(log.predictor_dist[j]),
            _fmt(log.du[j]),
            _fmt(log.dh[j]),
            _fmt(log.jump_gauge[j]),
            _fmt(log.cap_slack[j]),
            _fmt(log.state_bound_slack[j]),
            _fmt(log.output_bound_slack[j]),
        ]
        for j in range(len(log))
    ]
    _write_csv(path, header, rows)


def _convergence_csv(path: Path, table) -> None:
    header = ["level", "epsilon", "var_xi", "diff_to_next", "delta_to_next", "ratio"]
    rows = []
    k = table.variations.size
    for lvl in range(k):
        eps = table.epsilons[lvl] if table.epsilons.size else ""
        if lvl < table.diffs.size:
            rows.append(
                [
                    str(lvl),
                    _fmt(eps) if eps != "" else "",
                    _fmt(table.variations[lvl]),
                    _fmt(table.diffs[lvl]),
                    _fmt(table.deltas[lvl]),
                    _fmt(table.ratios[lvl]),
                ]
            )
        else:
            rows.append(
                [str(lvl), _fmt(eps) if eps != "" else "", _fmt(table.variations[lvl]), "", "", ""]
            )
    _write_csv(path, header, rows)


def _audit_csv(path: Path, report) -> None:
    header = ["j0", "j1", "window_variation", "bound", "slack", "test_element_vi_min"]
    rows = [
        [str(w.j0), str(w.j1), _fmt(w.window_variation), _fmt(w.bound), _fmt(w.slack), _fmt(w.test_element_vi_min)]
        for w in report.windows
    ]
    _write_csv(path, header, rows)


def _dependence_csv(path: Path, table) -> None:
    header = ["delta", "initial_gap", "output_gap", "ratio"]
    rows = [
        [_fmt(r.delta), _fmt(r.initial_gap), _fmt(r.output_gap), _fmt(r.ratio)] for r in table.rows
    ]
    _write_csv(path, header, rows)


# -- experiment execution ------------------------------------------------------


def _exp_seed(base_seed: int, index: int) -> int:
    return int(base_seed) * 1000 + index


def _run_solve(problem: SweepProblem, out: Path, formats, record_artifacts, exp, seed):
    result = solve(problem)
    sol = result.solution
    arts = []
    if "csv" in formats:
        _solution_csv(out / "solution.csv", sol)
        _steps_csv(out / "steps.csv", sol)
        arts += ["solution.csv", "steps.csv"]
    if "svg" in formats and "csv" in formats:
        ycols = [f"xi{i}" for i in range(sol.xi.dim)]
        emit_plot(out / "solution.csv", {"x": "t", "y": ycols, "title": "offset trace"}, out / "solution.svg")
        arts.append("solution.svg")
    metrics = {
        "steps": int(len(sol.log)),
        "var_xi": sol.total_variation,
        "min_cap_slack": float(np.min(sol.log.cap_slack)) if len(sol.log) else 0.0,
        "min_state_bound_slack": float(np.min(sol.log.state_bound_slack)) if len(sol.log) else 0.0,
        "min_output_bound_slack": float(np.min(sol.log.output_bound_slack)) if len(sol.log) else 0.0,
        "case": result.case,
    }
    ok = (
        metrics["min_cap_slack"] >= -1e-9
        and metrics["min_state_bound_slack"] >= -1e-9
        and metrics["min_output_bound_slack"] >= -1e-9
    )
    return sol, result, ExperimentOutcome("solve", "ok" if ok else "failed", metrics, arts)


def _ensure_solution(problem, cache):
    if "solution" not in cache:
        if problem.has_step_inputs:
            cache["solution"] = catching_up(problem)
        else:
            res = solve(problem)
            cache["result"] = res
            cache["solution"] = res.solution
    return cache["solution"]


def run(ref, out_dir, *, seed=None, formats=None) -> RunRecord:
    """Execute a scenario and write its artifacts under ``out_dir``.

    ``ref`` is a config path, a catalog name, or a config dict.  The record
    lists every artifact with its SHA-256 so byte-level reproducibility can
    be asserted.  The run aborts with :class:`ConfigError` if static
    validation fails.
    """
    cfg = load_config(ref)
    report = verify(cfg)
    if not report.ok:
        raise ConfigError(f"scenario failed validation:\n{report}")
    if seed is not None:
        cfg = dict(cfg)
        cfg["seed"] = int(seed)
    base_seed = cfg["seed"]
    formats = list(formats if formats is not None else cfg.get("output", {}).get("formats", ["csv"]))

    out = Path(out_dir) / cfg["name"]
    out.mkdir(parents=True, exist_ok=True)

    problem = build_problem(cfg)
    outcomes = []
    fitted = {}
    cache: dict = {}

    for i, exp in enumerate(cfg["experiments"]):
        kind = exp["kind"]
        eseed = _exp_seed(base_seed, i)
        if kind == "solve":
            sol, result, outcome = _run_solve(problem, out, formats, None, exp, eseed)
            cache["solution"], cache["result"] = sol, result
            if result.table.diffs.size and "csv" in formats:
                _convergence_csv(out / "convergence.csv", result.table)
                outcome.artifacts.append("convergence.csv")
                fitted["refinement_constant"] = result.table.fitted_constant
            outcomes.append(outcome)

        elif kind == "refinement":
            result = solve(problem)
            cache["solution"], cache["result"] = result.solution, result
            arts = []
            if "csv" in formats:
                _convergence_csv(out / "convergence.csv", result.table)
                _solution_csv(out / "solution.csv", result.solution)
                _steps_csv(out / "steps.csv", result.solution)
                arts += ["convergence.csv", "solution.csv", "steps.csv"]
            if "svg" in formats and "csv" in formats:
                emit_plot(
                    out / "convergence.csv",
                    {"x": "epsilon", "y": ["diff_to_next"], "kind": "scatter", "title": "refinement"},
                    out / "convergence.svg",
                )
                arts.append("convergence.svg")
            fitted["refinement_constant"] = result.table.fitted_constant
            metrics = {
                "levels": int(result.table.variations.size),
                "monotone": bool(result.table.monotone),
                "fitted_constant": result.table.fitted_constant,
                "max_var": float(np.max(result.table.variations)),
            }
            outcomes.append(
                ExperimentOutcome("refinement", "ok" if result.table.monotone else "failed", metrics, arts)
            )

        elif kind == "residuals":
            sol = _ensure_solution(problem, cache)
            budget = TestBudget(
                z_per_step=int(exp.get("z_per_step", 8)),
                test_functions=int(exp.get("test_functions", 6)),
                seed=eseed,
                tol=float(exp.get("tol", 1e-10)),
            )
            rep = residuals(sol, sol.problem, budget)
            payload = {
                "discrete_vi_min": rep.discrete_vi_min,
                "kurzweil_vi_min": rep.kurzweil_vi_min,
                "k4_gap": rep.k4_gap,
                "steps": rep.steps,
                "seed": budget.seed,
                "z_per_step": budget.z_per_step,
                "test_functions": budget.test_functions,
            }
            arts = []
            if "csv" in formats:
                (out / "residuals.json").write_text(json.dumps(payload, sort_keys=True, indent=1))
                arts.append("residuals.json")
            outcomes.append(
                ExperimentOutcome("residuals", "ok" if rep.valid else "failed", payload, arts)
            )

        elif kind == "variation_audit":
            sol = _ensure_solution(problem, cache)
            report_a = variation_audit(sol, sol.problem, exp["windows"])
            arts = []
            if "csv" in formats:
                _audit_csv(out / "audit.csv", report_a)
                arts.append("audit.csv")
            metrics = {
                "windows": len(report_a.windows),
                "total_variation": report_a.total_variation,
                "global_bound": report_a.global_bound,
                "min_window_slack": min(w.slack for w in report_a.windows),
                "min_test_vi": min(w.test_element_vi_min for w in report_a.windows),
            }
            ok = report_a.all_windows_ok and metrics["min_test_vi"] >= -1e-9
            outcomes.append(ExperimentOutcome("variation_audit", "ok" if ok else "failed", metrics, arts))

        elif kind == "continuous_dependence":
            deltas = [float(d) for d in exp["deltas"]]
            direction = np.asarray(exp.get("direction", [1.0]), dtype=float)
            perturbations = [
                (StepFn.constant(d * direction, *problem.interval), None, None) for d in deltas
            ]
            table = continuous_dependence_study(problem, perturbations)
            arts = []
            if "csv" in formats:
                _dependence_csv(out / "dependence.csv", table)
                arts.append("dependence.csv")
            fitted["dependence_constant"] = table.fitted_constant
            metrics = {
                "perturbations": len(table.rows),
                "fitted_constant": table.fitted_constant,
                "monotone": bool(table.monotone),
                "max_gap": max(r.output_gap for r in table.rows),
            }
            outcomes.append(
                ExperimentOutcome(
                    "continuous_dependence", "ok" if table.monotone else "failed", metrics, arts
                )
            )

        elif kind == "ac_residual":
            rep = ac_residual(
                problem,
                sample_count=int(exp.get("sample_count", 200)),
                z_per_time=int(exp.get("z_per_time", 12)),
                blocks=int(exp.get("blocks", 10)),
                seed=eseed,
            )
            fitted["ac_constant_sq"] = rep.c_hat_sq
            metrics = {
                "residual_min_scaled": rep.residual_min_scaled,
                "c_hat_sq": rep.c_hat_sq,
                "blocks": rep.block_count,
            }
            ok = rep.valid(float(exp.get("tol", 1e-8)))
            outcomes.append(ExperimentOutcome("ac_residual", "ok" if ok else "failed", metrics, []))

        elif kind == "negative_control":
            sol = _ensure_solution(problem, cache)
            u = problem.u
            diff = sup_distance(sol.xi, u)
            var_u = total_variation(u).total
            metrics = {
                "sup_diff_xi_u": diff,
                "var_xi": sol.total_variation,
                "var_u": var_u,
            }
            status = "passed-negative" if diff <= 1e-12 else "failed"
            outcomes.append(ExperimentOutcome("negative_control", status, metrics, []))

        else:  # pragma: no cover - guarded by validation
            raise ConfigError(f"unhandled experiment kind '{kind}'")

    manifest = {}
    for outcome in outcomes:
        for name in outcome.artifacts:
            data = (out / name).read_bytes()
            manifest[name] = hashlib.sha256(data).hexdigest()

    record = RunRecord(
        scenario=cfg["name"],
        seed=base_seed,
        config_hash=config_hash(cfg),
        experiments=outcomes,
        artifacts=dict(sorted(manifest.items())),
        fitted_constants=fitted,
    )
    (out / "run_record.json").write_text(record.to_json())
    return record
