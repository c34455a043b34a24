"""From-scratch MLP, peephole LSTM and encoder-only Transformer."""

from .base import MinMaxScaler, Network
from .lstm import LstmParams, lstm_forward, lstm_step
from .mlp import MlpParams, mlp_forward
from .training import (
    Adam,
    TrainConfig,
    TrainReport,
    WindowedDataset,
    finite_difference_grads,
    forecast_rollout,
    gradient_check,
    make_windows,
    train,
)
from .transformer import TransformerParams, attention, positional_encoding, transformer_forward

__all__ = [
    "Adam",
    "LstmParams",
    "MinMaxScaler",
    "MlpParams",
    "Network",
    "TrainConfig",
    "TrainReport",
    "TransformerParams",
    "WindowedDataset",
    "attention",
    "finite_difference_grads",
    "forecast_rollout",
    "gradient_check",
    "lstm_forward",
    "lstm_step",
    "make_windows",
    "mlp_forward",
    "positional_encoding",
    "train",
    "transformer_forward",
]
