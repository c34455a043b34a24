"""Peephole LSTM with a linear readout of the final hidden state.

Gate equations, per step (``*`` is elementwise; peephole weights are
diagonal and stored as vectors)::

    I_t = sigmoid(W_xI x_t + W_hI h_{t-1} + w_cI * c_{t-1} + B_I)
    F_t = sigmoid(W_xF x_t + W_hF h_{t-1} + w_cF * c_{t-1} + B_F)
    c_t = F_t * c_{t-1} + I_t * tanh(W_xc x_t + W_hc h_{t-1} + B_c)
    O_t = sigmoid(W_xO x_t + W_hO h_{t-1} + w_cO * c_t + B_O)
    h_t = O_t * tanh(c_t)
"""

import numpy as np

from ..errors import ShapeError
from .base import Network, glorot, sigmoid

__all__ = ["LstmParams", "lstm_step", "lstm_forward", "GATES"]

GATES = ("I", "F", "c", "O")


class LstmParams(Network):
    kind = "lstm"
    _sample_ndim = 2

    def __init__(self, input_size, hidden_size, output_size=None, params=None, rng=None, seed=0):
        self.n_input = int(input_size)
        self.n_hidden = int(hidden_size)
        self.n_output = int(output_size if output_size is not None else input_size)
        nx, nh, ny = self.n_input, self.n_hidden, self.n_output
        if params is None:
            rng = rng if rng is not None else np.random.default_rng(seed)
            params = {}
            for g in GATES:
                params[f"W_x{g}"] = glorot(rng, nh, nx)
                params[f"W_h{g}"] = glorot(rng, nh, nh)
            for g in ("I", "F", "O"):
                params[f"W_c{g}"] = glorot(rng, nh, nh, shape=(nh,))
            for g in GATES:
                params[f"B_{g}"] = np.zeros(nh)
            params["W_out"] = glorot(rng, ny, nh)
            params["b_out"] = np.zeros(ny)
        super().__init__(params)
        expected = self._shapes()
        for k, shape in expected.items():
            if self.params.get(k) is None or self.params[k].shape != shape:
                raise ShapeError(f"LSTM parameter {k} must have shape {shape}")

    def _shapes(self):
        nx, nh, ny = self.n_input, self.n_hidden, self.n_output
        shapes = {}
        for g in GATES:
            shapes[f"W_x{g}"] = (nh, nx)
            shapes[f"W_h{g}"] = (nh, nh)
            shapes[f"B_{g}"] = (nh,)
        for g in ("I", "F", "O"):
            shapes[f"W_c{g}"] = (nh,)
        shapes["W_out"] = (ny, nh)
        shapes["b_out"] = (ny,)
        return shapes

    @property
    def input_size(self):
        return self.n_input

    @property
    def output_size(self):
        return self.n_output

    def architecture(self):
        return {
            "kind": self.kind,
            "input_size": self.n_input,
            "hidden_size": self.n_hidden,
            "output_size": self.n_output,
        }

    def step(self, x, h_prev, c_prev):
        """One batched step; returns (h, c, cache)."""
        p = self.params
        a_i = x @ p["W_xI"].T + h_prev @ p["W_hI"].T + p["W_cI"] * c_prev + p["B_I"]
        a_f = x @ p["W_xF"].T + h_prev @ p["W_hF"].T + p["W_cF"] * c_prev + p["B_F"]
        a_g = x @ p["W_xc"].T + h_prev @ p["W_hc"].T + p["B_c"]
        i_t = sigmoid(a_i)
        f_t = sigmoid(a_f)
        g_t = np.tanh(a_g)
        c = f_t * c_prev + i_t * g_t
        a_o = x @ p["W_xO"].T + h_prev @ p["W_hO"].T + p["W_cO"] * c + p["B_O"]
        o_t = sigmoid(a_o)
        tc = np.tanh(c)
        h = o_t * tc
        return h, c, (x, h_prev, c_prev, i_t, f_t, g_t, o_t, c, tc)

    def forward(self, x):
        batch, steps, _ = x.shape
        h = np.zeros((batch, self.n_hidden))
        c = np.zeros((batch, self.n_hidden))
        caches = []
        for t in range(steps):
            h, c, cache = self.step(x[:, t, :], h, c)
            caches.append(cache)
        y = h @ self.params["W_out"].T + self.params["b_out"]
        return y, (caches, h)

    def backward(self, cache, dy):
        caches, h_last = cache
        p = self.params
        grads = {k: np.zeros_like(v) for k, v in p.items()}
        grads["W_out"] = dy.T @ h_last
        grads["b_out"] = dy.sum(axis=0)
        dh = dy @ p["W_out"]
        dc_next = np.zeros_like(dh)
        for x, h_prev, c_prev, i_t, f_t, g_t, o_t, c, tc in reversed(caches):
            da_o = dh * tc * o_t * (1.0 - o_t)
            dc = dc_next + dh * o_t * (1.0 - tc * tc) + da_o * p["W_cO"]
            da_f = dc * c_prev * f_t * (1.0 - f_t)
            da_i = dc * g_t * i_t * (1.0 - i_t)
            da_g = dc * i_t * (1.0 - g_t * g_t)
            for g, da in (("I", da_i), ("F", da_f), ("c", da_g), ("O", da_o)):
                grads[f"W_x{g}"] += da.T @ x
                grads[f"W_h{g}"] += da.T @ h_prev
                grads[f"B_{g}"] += da.sum(axis=0)
            grads["W_cI"] += (da_i * c_prev).sum(axis=0)
            grads["W_cF"] += (da_f * c_prev).sum(axis=0)
            grads["W_cO"] += (da_o * c).sum(axis=0)
            dc_next = dc * f_t + da_i * p["W_cI"] + da_f * p["W_cF"]
            dh = da_i @ p["W_hI"] + da_f @ p["W_hF"] + da_g @ p["W_hc"] + da_o @ p["W_hO"]
        return grads


def lstm_step(p, x_t, h_prev, c_prev):
    """Single unbatched step; returns ``(h_t, c_t)``."""
    x_t = np.asarray(x_t, dtype=np.float64)
    h_prev = np.asarray(h_prev, dtype=np.float64)
    c_prev = np.asarray(c_prev, dtype=np.float64)
    if x_t.shape != (p.n_input,) or h_prev.shape != (p.n_hidden,) or c_prev.shape != (p.n_hidden,):
        raise ShapeError("lstm_step: inconsistent x/h/c dimensions")
    h, c, _ = p.step(x_t[None], h_prev[None], c_prev[None])
    return h[0], c[0]


def lstm_forward(p, sequence):
    """Run a (window x feature) sequence from zero state and read out the last h."""
    seq = np.asarray(sequence, dtype=np.float64)
    if seq.ndim != 2 or seq.shape[1] != p.n_input:
        raise ShapeError(f"expected (window, {p.n_input}) sequence, got {seq.shape}")
    y, _ = p.forward(seq[None])
    return y[0]
