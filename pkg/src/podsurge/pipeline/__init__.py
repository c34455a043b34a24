"""Experiment orchestration, metrics, artifacts and the ``podsurge`` CLI."""

from .config import ExperimentConfig, NetworkConfig, load_config
from .experiments import (
    EvaluationReport,
    Run,
    mode_error_contributions,
    run_avg_forecast,
    run_experiment,
    run_fft_mlp,
    run_pod_lstm,
)
from .metrics import error_map_percent, horizon_steps, pointwise_relative_error, relative_l2

__all__ = [
    "EvaluationReport",
    "ExperimentConfig",
    "NetworkConfig",
    "Run",
    "error_map_percent",
    "horizon_steps",
    "load_config",
    "mode_error_contributions",
    "pointwise_relative_error",
    "relative_l2",
    "run_avg_forecast",
    "run_experiment",
    "run_fft_mlp",
    "run_pod_lstm",
]
