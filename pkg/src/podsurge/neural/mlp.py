"""Fully connected network: ``z = W x + b``, ReLU on hidden layers, linear output."""

import numpy as np

from ..errors import ShapeError
from .base import Network, glorot, relu

__all__ = ["MlpParams", "mlp_forward"]


class MlpParams(Network):
    kind = "mlp"
    _sample_ndim = 1

    def __init__(self, layer_sizes, params=None, rng=None, seed=0):
        sizes = [int(s) for s in layer_sizes]
        if len(sizes) < 2 or min(sizes) < 1:
            raise ShapeError(f"invalid layer sizes {sizes}")
        self.layer_sizes = sizes
        if params is None:
            rng = rng if rng is not None else np.random.default_rng(seed)
            params = {}
            for i, (n_in, n_out) in enumerate(zip(sizes[:-1], sizes[1:])):
                params[f"W{i}"] = glorot(rng, n_out, n_in)
                params[f"b{i}"] = np.zeros(n_out)
        super().__init__(params)
        for i, (n_in, n_out) in enumerate(zip(sizes[:-1], sizes[1:])):
            if self.params[f"W{i}"].shape != (n_out, n_in) or self.params[f"b{i}"].shape != (n_out,):
                raise ShapeError(f"layer {i} parameters inconsistent with sizes {sizes}")

    @property
    def n_layers(self):
        return len(self.layer_sizes) - 1

    @property
    def input_size(self):
        return self.layer_sizes[0]

    @property
    def output_size(self):
        return self.layer_sizes[-1]

    def architecture(self):
        return {"kind": self.kind, "layer_sizes": list(self.layer_sizes)}

    def forward(self, x):
        acts = [x]
        pre = []
        h = x
        for i in range(self.n_layers):
            z = h @ self.params[f"W{i}"].T + self.params[f"b{i}"]
            pre.append(z)
            h = relu(z) if i < self.n_layers - 1 else z
            acts.append(h)
        return h, (acts, pre)

    def backward(self, cache, dy):
        acts, pre = cache
        grads = {}
        delta = dy
        for i in reversed(range(self.n_layers)):
            if i < self.n_layers - 1:
                delta = delta * (pre[i] > 0)
            grads[f"W{i}"] = delta.T @ acts[i]
            grads[f"b{i}"] = delta.sum(axis=0)
            delta = delta @ self.params[f"W{i}"]
        return grads


def mlp_forward(p, x):
    """Evaluate the network on one input vector (normalized space)."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (p.input_size,):
        raise ShapeError(f"expected input of length {p.input_size}, got {x.shape}")
    y, _ = p.forward(x[None])
    return y[0]
