"""Encoder-only Transformer regressor.

Input rows are embedded linearly, a sinusoidal positional code is added,
and ``layer_count`` post-norm blocks are applied::

    H0 = LayerNorm(SelfAttn(X) + X)
    H  = LayerNorm(FFN(H0) + H0)

The prediction is a linear readout of the final position.
"""

import numpy as np

from ..errors import ShapeError
from .base import Network, glorot, layer_norm, layer_norm_backward, relu, softmax

__all__ = ["TransformerParams", "positional_encoding", "attention", "transformer_forward"]


def positional_encoding(t, dim):
    """``sin(w_i t)`` on even ``i``, ``cos(w_i t)`` on odd ``i``, ``w_i = 10000^(-2 floor(i/2)/dim)``."""
    if dim < 2 or dim % 2:
        raise ShapeError(f"positional encoding dimension must be even, got {dim}")
    i = np.arange(dim)
    omega = 1.0 / 10000.0 ** (2.0 * (i // 2) / dim)
    arg = np.multiply.outer(np.asarray(t, dtype=np.float64), omega)
    return np.where(i % 2 == 0, np.sin(arg), np.cos(arg))


def attention(q, k, v, d_k=None):
    """Scaled dot-product attention ``softmax(Q K^T / sqrt(d_k)) V``."""
    q = np.asarray(q, dtype=np.float64)
    k = np.asarray(k, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if q.ndim != 2 or k.ndim != 2 or v.ndim != 2:
        raise ShapeError("attention expects 2-D q, k, v")
    if q.shape[1] != k.shape[1] or k.shape[0] != v.shape[0]:
        raise ShapeError(f"attention shapes q{q.shape} k{k.shape} v{v.shape} are inconsistent")
    d_k = q.shape[1] if d_k is None else d_k
    weights = softmax(q @ k.T / np.sqrt(d_k), axis=-1)
    return weights @ v


class TransformerParams(Network):
    kind = "transformer"
    _sample_ndim = 2

    def __init__(self, input_size, output_size=None, model_dim=64, head_count=4,
                 layer_count=2, ff_dim=128, params=None, rng=None, seed=0):
        self.n_input = int(input_size)
        self.n_output = int(output_size if output_size is not None else input_size)
        self.model_dim = int(model_dim)
        self.head_count = int(head_count)
        self.layer_count = int(layer_count)
        self.ff_dim = int(ff_dim)
        if self.model_dim % self.head_count:
            raise ShapeError("model_dim must be divisible by head_count")
        if self.model_dim % 2:
            raise ShapeError("model_dim must be even for the positional encoding")
        d, f = self.model_dim, self.ff_dim
        if params is None:
            rng = rng if rng is not None else np.random.default_rng(seed)
            params = {"W_emb": glorot(rng, d, self.n_input), "b_emb": np.zeros(d)}
            for l in range(self.layer_count):
                pre = f"layer{l}."
                for name in ("W_q", "W_k", "W_v", "W_o"):
                    params[pre + name] = glorot(rng, d, d)
                params[pre + "b_o"] = np.zeros(d)
                params[pre + "ln1_gain"] = np.ones(d)
                params[pre + "ln1_shift"] = np.zeros(d)
                params[pre + "W_ff1"] = glorot(rng, f, d)
                params[pre + "b_ff1"] = np.zeros(f)
                params[pre + "W_ff2"] = glorot(rng, d, f)
                params[pre + "b_ff2"] = np.zeros(d)
                params[pre + "ln2_gain"] = np.ones(d)
                params[pre + "ln2_shift"] = np.zeros(d)
            params["W_out"] = glorot(rng, self.n_output, d)
            params["b_out"] = np.zeros(self.n_output)
        super().__init__(params)
        if self.params["W_emb"].shape != (d, self.n_input) or self.params["W_out"].shape != (self.n_output, d):
            raise ShapeError("transformer embedding/readout shapes are inconsistent")

    @property
    def key_dim(self):
        return self.model_dim // self.head_count

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
            "output_size": self.n_output,
            "model_dim": self.model_dim,
            "head_count": self.head_count,
            "layer_count": self.layer_count,
            "ff_dim": self.ff_dim,
        }

    def _split(self, z):
        b, t, _ = z.shape
        return z.reshape(b, t, self.head_count, self.key_dim).transpose(0, 2, 1, 3)

    def _merge(self, z):
        b, _, t, _ = z.shape
        return z.transpose(0, 2, 1, 3).reshape(b, t, self.model_dim)

    def _block(self, z, l):
        p = self.params
        pre = f"layer{l}."
        q = self._split(z @ p[pre + "W_q"].T)
        k = self._split(z @ p[pre + "W_k"].T)
        v = self._split(z @ p[pre + "W_v"].T)
        scale = 1.0 / np.sqrt(self.key_dim)
        a = softmax(q @ k.transpose(0, 1, 3, 2) * scale, axis=-1)
        ctx = self._merge(a @ v)
        att = ctx @ p[pre + "W_o"].T + p[pre + "b_o"]
        h0, ln1 = layer_norm(z + att, p[pre + "ln1_gain"], p[pre + "ln1_shift"])
        f1 = h0 @ p[pre + "W_ff1"].T + p[pre + "b_ff1"]
        hf = relu(f1)
        f2 = hf @ p[pre + "W_ff2"].T + p[pre + "b_ff2"]
        out, ln2 = layer_norm(h0 + f2, p[pre + "ln2_gain"], p[pre + "ln2_shift"])
        return out, (z, q, k, v, a, ctx, ln1, h0, f1, hf, ln2)

    def _block_backward(self, dout, cache, l, grads):
        p = self.params
        pre = f"layer{l}."
        z, q, k, v, a, ctx, ln1, h0, f1, hf, ln2 = cache
        lead = (0, 1)
        dr2, grads[pre + "ln2_gain"], grads[pre + "ln2_shift"] = layer_norm_backward(
            dout, p[pre + "ln2_gain"], ln2)
        df2 = dr2
        grads[pre + "W_ff2"] = np.einsum("bti,btj->ij", df2, hf)
        grads[pre + "b_ff2"] = df2.sum(axis=lead)
        df1 = (df2 @ p[pre + "W_ff2"]) * (f1 > 0)
        grads[pre + "W_ff1"] = np.einsum("bti,btj->ij", df1, h0)
        grads[pre + "b_ff1"] = df1.sum(axis=lead)
        dh0 = dr2 + df1 @ p[pre + "W_ff1"]
        dr1, grads[pre + "ln1_gain"], grads[pre + "ln1_shift"] = layer_norm_backward(
            dh0, p[pre + "ln1_gain"], ln1)
        datt = dr1
        grads[pre + "W_o"] = np.einsum("bti,btj->ij", datt, ctx)
        grads[pre + "b_o"] = datt.sum(axis=lead)
        dctx = self._split(datt @ p[pre + "W_o"])
        scale = 1.0 / np.sqrt(self.key_dim)
        da = dctx @ v.transpose(0, 1, 3, 2)
        dv = a.transpose(0, 1, 3, 2) @ dctx
        ds = a * (da - (da * a).sum(axis=-1, keepdims=True)) * scale
        dq = self._merge(ds @ k)
        dk = self._merge(ds.transpose(0, 1, 3, 2) @ q)
        dv = self._merge(dv)
        grads[pre + "W_q"] = np.einsum("bti,btj->ij", dq, z)
        grads[pre + "W_k"] = np.einsum("bti,btj->ij", dk, z)
        grads[pre + "W_v"] = np.einsum("bti,btj->ij", dv, z)
        dz = dr1 + dq @ p[pre + "W_q"] + dk @ p[pre + "W_k"] + dv @ p[pre + "W_v"]
        return dz

    def forward(self, x):
        p = self.params
        steps = x.shape[1]
        z = x @ p["W_emb"].T + p["b_emb"] + positional_encoding(np.arange(steps), self.model_dim)
        caches = []
        for l in range(self.layer_count):
            z, cache = self._block(z, l)
            caches.append(cache)
        last = z[:, -1, :]
        y = last @ p["W_out"].T + p["b_out"]
        return y, (x, caches, last)

    def backward(self, cache, dy):
        x, caches, last = cache
        p = self.params
        grads = {}
        grads["W_out"] = dy.T @ last
        grads["b_out"] = dy.sum(axis=0)
        dz = np.zeros((x.shape[0], x.shape[1], self.model_dim))
        dz[:, -1, :] = dy @ p["W_out"]
        for l in reversed(range(self.layer_count)):
            dz = self._block_backward(dz, caches[l], l, grads)
        grads["W_emb"] = np.einsum("bti,btj->ij", dz, x)
        grads["b_emb"] = dz.sum(axis=(0, 1))
        return grads


def transformer_forward(p, sequence):
    """Evaluate one (window x feature) sequence (normalized space)."""
    seq = np.asarray(sequence, dtype=np.float64)
    if seq.ndim != 2 or seq.shape[1] != p.n_input:
        raise ShapeError(f"expected (window, {p.n_input}) sequence, got {seq.shape}")
    y, _ = p.forward(seq[None])
    return y[0]
