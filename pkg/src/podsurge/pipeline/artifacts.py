"""Readers and writers for run artifacts (model JSON, loss CSV, digests)."""

import csv
import hashlib
import io
import json
from pathlib import Path

import numpy as np

from ..errors import ArtifactError, ShapeError
from ..neural import LstmParams, MinMaxScaler, MlpParams, TransformerParams

__all__ = [
    "digest",
    "dumps_json",
    "model_to_json",
    "model_from_json",
    "loss_to_csv",
    "loss_from_csv",
    "table_to_csv",
    "table_from_csv",
    "write_text",
    "read_text",
]


def digest(text):
    """SHA-256 hex digest of an artifact's serialized text."""
    if isinstance(text, str):
        text = text.encode("utf-8")
    return hashlib.sha256(text).hexdigest()


def dumps_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def model_to_json(model):
    """Architecture descriptor, named flat weight groups and scalers."""
    doc = {
        "architecture": model.architecture(),
        "params": {
            name: {"shape": list(arr.shape), "values": [float(v) for v in arr.reshape(-1)]}
            for name, arr in model.params.items()
        },
        "x_scaler": None if model.x_scaler is None else model.x_scaler.to_dict(),
        "y_scaler": None if model.y_scaler is None else model.y_scaler.to_dict(),
    }
    return dumps_json(doc)


def model_from_json(text):
    doc = json.loads(text)
    arch = dict(doc["architecture"])
    params = {
        name: np.array(g["values"], dtype=np.float64).reshape(g["shape"])
        for name, g in doc["params"].items()
    }
    kind = arch.pop("kind")
    if kind == "mlp":
        model = MlpParams(arch["layer_sizes"], params=params)
    elif kind == "lstm":
        model = LstmParams(params=params, **arch)
    elif kind == "transformer":
        model = TransformerParams(params=params, **arch)
    else:
        raise ShapeError(f"unknown model kind {kind!r}")
    if doc.get("x_scaler"):
        model.x_scaler = MinMaxScaler.from_dict(doc["x_scaler"])
    if doc.get("y_scaler"):
        model.y_scaler = MinMaxScaler.from_dict(doc["y_scaler"])
    return model


def table_to_csv(header, columns):
    """Columns of equal length to CSV; floats use shortest round-trip repr."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in zip(*columns):
        w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def table_from_csv(text):
    """Return (header, dict of float columns)."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ShapeError("empty CSV")
    header = rows[0]
    cols = {h: np.array([float(r[i]) for r in rows[1:]]) for i, h in enumerate(header)}
    return header, cols


def loss_to_csv(report):
    epochs = list(range(len(report.train_loss)))
    return table_to_csv(["epoch", "train_loss", "val_loss"],
                        [epochs, [float(v) for v in report.train_loss], [float(v) for v in report.val_loss]])


def loss_from_csv(text):
    _, cols = table_from_csv(text)
    return cols["epoch"].astype(int), cols["train_loss"], cols["val_loss"]


def write_text(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    return path


def read_text(path):
    path = Path(path)
    if not path.is_file():
        raise ArtifactError(f"missing artifact: {path}")
    return path.read_text(encoding="utf-8")
