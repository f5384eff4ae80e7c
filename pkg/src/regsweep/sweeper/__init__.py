"""Catching-up solver and solution diagnostics for sweeping processes."""

from .problem import DEFAULT_M, StepLog, SweepProblem, SweepSolution
from .solver import ConvergenceTable, SolveResult, catching_up, solve
from .diagnostics import (
    AcResidualReport,
    AuditReport,
    DependenceRow,
    DependenceTable,
    HolderReport,
    ResidualReport,
    TestBudget,
    UniquenessVerdict,
    WindowAudit,
    ac_residual,
    continuous_dependence_study,
    holder_local_check,
    residuals,
    restrict_residual,
    uniqueness_probe,
    variation_audit,
    variation_bound,
)

__all__ = [
    "DEFAULT_M",
    "SweepProblem",
    "SweepSolution",
    "StepLog",
    "catching_up",
    "solve",
    "SolveResult",
    "ConvergenceTable",
    "variation_bound",
    "variation_audit",
    "AuditReport",
    "WindowAudit",
    "TestBudget",
    "ResidualReport",
    "residuals",
    "restrict_residual",
    "UniquenessVerdict",
    "uniqueness_probe",
    "HolderReport",
    "holder_local_check",
    "AcResidualReport",
    "ac_residual",
    "DependenceRow",
    "DependenceTable",
    "continuous_dependence_study",
]
