"""Scenario harness: configuration, catalog, execution, and acceptance."""

from .acceptance import CRITERIA, CriterionResult, play_recursion, run_acceptance
from .builders import build_family, build_input, build_set
from .catalog import CATALOG, catalog_names, get_scenario
from .config import build_problem, config_hash, validate_config
from .runner import RunRecord, load_config, run, verify
from .svgplot import emit_plot, polyline_svg

__all__ = [
    "CATALOG",
    "catalog_names",
    "get_scenario",
    "build_problem",
    "build_family",
    "build_input",
    "build_set",
    "config_hash",
    "validate_config",
    "load_config",
    "run",
    "verify",
    "RunRecord",
    "emit_plot",
    "polyline_svg",
    "CRITERIA",
    "CriterionResult",
    "run_acceptance",
    "play_recursion",
]
