"""Small experiment configurations that run in seconds."""

TINY_FIELD = {"n_nodes": 24}
TINY_TRAIN = {"max_epochs": 4, "patience": 2, "batch_size": 16}

TINY = {
    "fft-mlp": {
        "kind": "fft-mlp",
        "field_model": TINY_FIELD,
        "samples_per_cycle": 40,
        "n_cycles": 2,
        "mlp": {"hidden_sizes": [8], "train": TINY_TRAIN},
    },
    "avg-forecast": {
        "kind": "avg-forecast",
        "field_model": TINY_FIELD,
        "samples_per_cycle": 40,
        "n_cycles": 3,
        "window": 8,
        "lstm": {"hidden_size": 4, "train": TINY_TRAIN},
        "transformer": {"model_dim": 8, "head_count": 2, "layer_count": 1, "ff_dim": 8, "train": TINY_TRAIN},
    },
    "pod-lstm": {
        "kind": "pod-lstm",
        "field_model": TINY_FIELD,
        "samples_per_cycle": 40,
        "n_cycles": 3,
        "window": 8,
        "lstm": {"hidden_size": 4, "train": TINY_TRAIN},
    },
}
