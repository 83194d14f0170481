"""Seeded session running, metrics, and experiment aggregation."""

from .experiment import (
    CellStats,
    DiffRow,
    ExperimentMatrix,
    SummaryTable,
    bootstrap_diff_ci,
    export_table,
    import_table,
    run_experiment,
)
from .metrics import ExertionModelParams, Metrics, compute_metrics, max_heart_rate, simulate_exertion
from .session import DEFAULT_TIME_CAP, SessionLog, replay_session, run_session

__all__ = [
    "CellStats",
    "DEFAULT_TIME_CAP",
    "DiffRow",
    "ExertionModelParams",
    "ExperimentMatrix",
    "Metrics",
    "SessionLog",
    "SummaryTable",
    "bootstrap_diff_ci",
    "compute_metrics",
    "export_table",
    "import_table",
    "max_heart_rate",
    "replay_session",
    "run_experiment",
    "run_session",
    "simulate_exertion",
]
