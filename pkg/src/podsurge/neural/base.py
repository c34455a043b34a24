"""Parameter containers, scaling and elementwise helpers shared by the networks."""

import numpy as np

from ..errors import ShapeError

LN_EPS = 1e-12


def sigmoid(z):
    # split by sign so exp never overflows
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def relu(z):
    return np.maximum(z, 0.0)


def softmax(z, axis=-1):
    shifted = z - z.max(axis=axis, keepdims=True)
    e = np.exp(shifted)
    return e / e.sum(axis=axis, keepdims=True)


def glorot(rng, fan_out, fan_in, shape=None):
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape or (fan_out, fan_in))


def layer_norm(x, gain, shift):
    mu = x.mean(axis=-1, keepdims=True)
    xc = x - mu
    var = (xc * xc).mean(axis=-1, keepdims=True)
    inv = 1.0 / np.sqrt(var + LN_EPS)
    xhat = xc * inv
    return gain * xhat + shift, (xhat, inv)


def layer_norm_backward(dy, gain, cache):
    xhat, inv = cache
    dxhat = dy * gain
    dx = inv * (
        dxhat
        - dxhat.mean(axis=-1, keepdims=True)
        - xhat * (dxhat * xhat).mean(axis=-1, keepdims=True)
    )
    lead = tuple(range(dy.ndim - 1))
    return dx, (dy * xhat).sum(axis=lead), dy.sum(axis=lead)


class MinMaxScaler:
    """Per-feature affine map of the fitted range onto [0, 1].

    A zero-span feature maps to 0 and inverts back to its constant value.
    """

    def __init__(self, low, span):
        self.low = np.asarray(low, dtype=np.float64)
        self.span = np.asarray(span, dtype=np.float64)

    @classmethod
    def fit(cls, data):
        flat = np.asarray(data, dtype=np.float64).reshape(-1, np.shape(data)[-1])
        low = flat.min(axis=0)
        return cls(low, flat.max(axis=0) - low)

    def transform(self, x):
        return (x - self.low) / np.where(self.span > 0, self.span, 1.0)

    def inverse(self, z):
        return self.low + z * self.span

    def to_dict(self):
        return {"low": self.low.tolist(), "span": self.span.tolist()}

    @classmethod
    def from_dict(cls, d):
        return cls(d["low"], d["span"])


class Network:
    """Named parameter groups plus a batched forward/backward pair.

    Subclasses implement ``forward(x) -> (y, cache)`` and
    ``backward(cache, dy) -> grads`` on normalized batches, where ``grads``
    has the same keys and shapes as ``params``.
    """

    kind = None

    def __init__(self, params):
        self.params = {k: np.asarray(v, dtype=np.float64) for k, v in params.items()}
        self.x_scaler = None
        self.y_scaler = None

    @property
    def input_size(self):
        raise NotImplementedError

    @property
    def output_size(self):
        raise NotImplementedError

    def architecture(self):
        raise NotImplementedError

    def forward(self, x):
        raise NotImplementedError

    def backward(self, cache, dy):
        raise NotImplementedError

    def copy(self):
        other = self.__class__.__new__(self.__class__)
        other.__dict__.update(self.__dict__)
        other.params = {k: v.copy() for k, v in self.params.items()}
        return other

    def n_parameters(self):
        return int(sum(v.size for v in self.params.values()))

    def predict(self, x):
        """Forward pass on raw (unscaled) inputs, returning raw outputs."""
        x = np.asarray(x, dtype=np.float64)
        single = x.ndim == self._sample_ndim
        if single:
            x = x[None]
        if x.ndim != self._sample_ndim + 1 or x.shape[-1] != self.input_size:
            raise ShapeError(f"{self.kind} expects inputs of width {self.input_size}, got {x.shape}")
        if self.x_scaler is not None:
            x = self.x_scaler.transform(x)
        y, _ = self.forward(x)
        if self.y_scaler is not None:
            y = self.y_scaler.inverse(y)
        return y[0] if single else y

    def loss_and_grads(self, x, y):
        """Mean squared error over batch and outputs, with its gradients."""
        pred, cache = self.forward(x)
        diff = pred - y
        loss = float(np.mean(diff * diff))
        grads = self.backward(cache, 2.0 * diff / diff.size)
        return loss, grads

    def loss(self, x, y):
        pred, _ = self.forward(x)
        diff = pred - y
        return float(np.mean(diff * diff))
