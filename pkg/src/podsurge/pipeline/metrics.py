"""Error measures used by the experiment reports."""

import numpy as np

from ..errors import DomainError, ShapeError

__all__ = [
    "relative_l2",
    "pointwise_relative_error",
    "horizon_steps",
    "error_map_percent",
]


def relative_l2(truth, prediction):
    """``||truth - prediction||_2 / ||truth||_2`` over all entries."""
    truth = np.asarray(truth, dtype=np.float64)
    prediction = np.asarray(prediction, dtype=np.float64)
    if truth.shape != prediction.shape:
        raise ShapeError(f"shape mismatch {truth.shape} vs {prediction.shape}")
    ref = np.linalg.norm(truth)
    if ref == 0.0:
        raise DomainError("reference has zero norm")
    return float(np.linalg.norm(truth - prediction) / ref)


def pointwise_relative_error(truth, prediction):
    truth = np.asarray(truth, dtype=np.float64)
    prediction = np.asarray(prediction, dtype=np.float64)
    if truth.shape != prediction.shape:
        raise ShapeError(f"shape mismatch {truth.shape} vs {prediction.shape}")
    if np.any(truth == 0.0):
        raise DomainError("pointwise relative error undefined where truth is zero")
    return np.abs(prediction - truth) / np.abs(truth)


def horizon_steps(truth, prediction, budget):
    """Number of leading forecast steps whose pointwise relative error is within ``budget``."""
    err = pointwise_relative_error(truth, prediction)
    if err.ndim > 1:
        err = err.reshape(err.shape[0], -1).max(axis=1)
    bad = np.flatnonzero(err > budget)
    return int(bad[0]) if bad.size else int(err.shape[0])


def error_map_percent(truth, prediction):
    """Per-node time-RMS error over time-RMS of the truth, in percent.

    ``truth`` and ``prediction`` are (node x time) arrays.
    """
    truth = np.asarray(truth, dtype=np.float64)
    prediction = np.asarray(prediction, dtype=np.float64)
    if truth.shape != prediction.shape or truth.ndim != 2:
        raise ShapeError(f"need matching (node, time) arrays, got {truth.shape} and {prediction.shape}")
    rms_truth = np.sqrt(np.mean(truth**2, axis=1))
    if np.any(rms_truth == 0.0):
        raise DomainError("a node has identically zero truth")
    rms_err = np.sqrt(np.mean((truth - prediction) ** 2, axis=1))
    return 100.0 * rms_err / rms_truth
