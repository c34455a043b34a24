"""Mini-batch Adam training with early stopping, windowing and rollout."""

from dataclasses import dataclass, field

import numpy as np

from ..errors import DomainError, ShapeError, TrainingError
from .base import MinMaxScaler

__all__ = [
    "TrainConfig",
    "TrainReport",
    "WindowedDataset",
    "Adam",
    "make_windows",
    "train",
    "forecast_rollout",
    "finite_difference_grads",
    "gradient_check",
]


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 1e-3
    batch_size: int = 32
    max_epochs: int = 2000
    patience: int = 50
    validation_fraction: float = 0.2
    seed: int = 0

    def __post_init__(self):
        if self.learning_rate <= 0 or self.batch_size < 1 or self.max_epochs < 1 or self.patience < 1:
            raise DomainError("learning_rate, batch_size, max_epochs and patience must be positive")
        if not (0.0 < self.validation_fraction <= 0.5):
            raise DomainError("validation_fraction must be in (0, 0.5]")
        if self.seed < 0:
            raise DomainError("seed must be non-negative")


@dataclass
class TrainReport:
    model: object
    train_loss: list = field(default_factory=list)
    val_loss: list = field(default_factory=list)
    best_epoch: int = 0
    stopped_epoch: int = 0

    @property
    def best_val_loss(self):
        return self.val_loss[self.best_epoch]


@dataclass(frozen=True)
class WindowedDataset:
    """Sliding windows over a (time x feature) series.

    ``inputs[j]`` is ``series[j : j + window]`` and ``targets[j]`` is
    ``series[j + window]``. Windows with ``j < split`` have their target
    inside the training span; the rest are test windows.
    """

    window: int
    inputs: np.ndarray
    targets: np.ndarray
    split: int
    series: np.ndarray
    split_index: int

    @property
    def train_inputs(self):
        return self.inputs[: self.split]

    @property
    def train_targets(self):
        return self.targets[: self.split]

    @property
    def test_inputs(self):
        return self.inputs[self.split:]

    @property
    def test_targets(self):
        return self.targets[self.split:]


def make_windows(series, window, train_fraction):
    """Window a series; the first ``train_fraction`` of samples is training data."""
    s = np.asarray(series, dtype=np.float64)
    if s.ndim == 1:
        s = s[:, None]
    if s.ndim != 2:
        raise ShapeError(f"series must be 1-D or 2-D, got shape {s.shape}")
    if window < 2:
        raise DomainError("window must be >= 2")
    if not (0.0 < train_fraction < 1.0):
        raise DomainError("train_fraction must be in (0, 1)")
    n = s.shape[0]
    split_index = int(round(train_fraction * n))
    if split_index <= window or split_index >= n:
        raise DomainError(f"series of length {n} too short for window {window} and split {train_fraction}")
    idx = np.arange(n - window)
    inputs = s[idx[:, None] + np.arange(window)]
    targets = s[idx + window]
    return WindowedDataset(
        window=int(window),
        inputs=inputs,
        targets=targets,
        split=split_index - window,
        series=s,
        split_index=split_index,
    )


class Adam:
    def __init__(self, params, lr=1e-3, beta1=0.9, beta2=0.999, eps=1e-8):
        self.lr, self.beta1, self.beta2, self.eps = lr, beta1, beta2, eps
        self.m = {k: np.zeros_like(v) for k, v in params.items()}
        self.v = {k: np.zeros_like(v) for k, v in params.items()}
        self.t = 0

    def step(self, params, grads):
        self.t += 1
        b1, b2 = self.beta1, self.beta2
        c1 = 1.0 - b1**self.t
        c2 = 1.0 - b2**self.t
        for k in params:
            g = grads[k]
            self.m[k] = b1 * self.m[k] + (1.0 - b1) * g
            self.v[k] = b2 * self.v[k] + (1.0 - b2) * g * g
            params[k] -= self.lr * (self.m[k] / c1) / (np.sqrt(self.v[k] / c2) + self.eps)


def _split_validation(n, fraction):
    n_val = max(1, int(round(fraction * n)))
    if n - n_val < 1:
        raise DomainError(f"{n} training samples cannot spare {n_val} for validation")
    return n - n_val


def train(model, data, cfg=None, targets=None):
    """Fit ``model`` by minimizing MSE with mini-batch Adam.

    ``data`` is either a :class:`WindowedDataset` (its training windows are
    used) or an input array with ``targets`` given separately. The final
    ``validation_fraction`` of the training samples, in their given order,
    is held out for early stopping. Inputs and targets are min-max scaled
    with statistics from the fitting samples; the scalers are attached to
    the returned model so ``model.predict`` works on raw values.

    Returns a :class:`TrainReport` whose ``model`` carries the parameters
    of the best validation epoch.
    """
    cfg = cfg or TrainConfig()
    if isinstance(data, WindowedDataset):
        x_all, y_all = data.train_inputs, data.train_targets
    else:
        if targets is None:
            raise ShapeError("targets are required when data is a plain array")
        x_all = np.asarray(data, dtype=np.float64)
        y_all = np.asarray(targets, dtype=np.float64)
    if len(x_all) == 0:
        raise DomainError("training split is empty")
    if len(x_all) != len(y_all):
        raise ShapeError(f"{len(x_all)} inputs vs {len(y_all)} targets")
    if x_all.shape[-1] != model.input_size or y_all.shape[-1] != model.output_size:
        raise ShapeError("data width does not match the model")

    n_fit = _split_validation(len(x_all), cfg.validation_fraction)
    x_scaler = MinMaxScaler.fit(x_all)
    y_scaler = MinMaxScaler.fit(y_all)
    x = x_scaler.transform(x_all)
    y = y_scaler.transform(y_all)
    x_fit, y_fit = x[:n_fit], y[:n_fit]
    x_val, y_val = x[n_fit:], y[n_fit:]

    net = model.copy()
    net.x_scaler, net.y_scaler = x_scaler, y_scaler
    rng = np.random.default_rng(cfg.seed)
    opt = Adam(net.params, lr=cfg.learning_rate)
    report = TrainReport(model=None)
    best_params = {k: v.copy() for k, v in net.params.items()}
    best = np.inf
    since_best = 0
    for epoch in range(cfg.max_epochs):
        order = rng.permutation(n_fit)
        total = 0.0
        for start in range(0, n_fit, cfg.batch_size):
            idx = order[start:start + cfg.batch_size]
            loss, grads = net.loss_and_grads(x_fit[idx], y_fit[idx])
            if not np.isfinite(loss):
                raise TrainingError("training loss is not finite", epoch)
            opt.step(net.params, grads)
            total += loss * len(idx)
        train_loss = total / n_fit
        val_loss = net.loss(x_val, y_val)
        if not np.isfinite(val_loss):
            raise TrainingError("validation loss is not finite", epoch)
        report.train_loss.append(train_loss)
        report.val_loss.append(val_loss)
        if val_loss < best:
            best = val_loss
            report.best_epoch = epoch
            best_params = {k: v.copy() for k, v in net.params.items()}
            since_best = 0
        else:
            since_best += 1
            if since_best >= cfg.patience:
                break
    report.stopped_epoch = len(report.val_loss) - 1
    net.params = best_params
    report.model = net
    return report


def forecast_rollout(model, seed_window, horizon):
    """Autoregressive forecast: each prediction becomes the newest window row."""
    win = np.asarray(seed_window, dtype=np.float64)
    if win.ndim == 1:
        win = win[:, None]
    if win.ndim != 2 or win.shape[1] != model.input_size:
        raise ShapeError(f"seed window must be (window, {model.input_size}), got {win.shape}")
    if model.output_size != model.input_size:
        raise ShapeError("rollout needs a model whose output width equals its input width")
    if horizon < 1:
        raise DomainError("horizon must be >= 1")
    win = win.copy()
    out = np.empty((horizon, model.output_size))
    for step in range(horizon):
        nxt = model.predict(win)
        out[step] = nxt
        win = np.vstack([win[1:], nxt[None]])
    return out


def finite_difference_grads(model, x, y, eps=1e-5):
    """Central-difference gradient of ``model.loss(x, y)`` for every parameter."""
    grads = {}
    for name, arr in model.params.items():
        g = np.zeros_like(arr)
        flat = arr.reshape(-1)
        gflat = g.reshape(-1)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + eps
            up = model.loss(x, y)
            flat[i] = orig - eps
            down = model.loss(x, y)
            flat[i] = orig
            gflat[i] = (up - down) / (2.0 * eps)
        grads[name] = g
    return grads


def gradient_check(model, x, y, eps=1e-5):
    """Relative error ``|g_a - g_fd| / max(|g_a|, |g_fd|)`` per parameter group."""
    _, analytic = model.loss_and_grads(x, y)
    numeric = finite_difference_grads(model, x, y, eps)
    errors = {}
    for name in model.params:
        a, n = analytic[name], numeric[name]
        scale = max(np.linalg.norm(a), np.linalg.norm(n))
        errors[name] = 0.0 if scale == 0.0 else float(np.linalg.norm(a - n) / scale)
    return errors
