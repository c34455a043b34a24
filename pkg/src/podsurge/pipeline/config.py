"""Experiment configuration: JSON schema, defaults and typed access."""

import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import jsonschema

from ..datagen import DEFAULT_LEVELS, RANDOM_MULTI_F, RANDOM_MULTI_U, SyntheticFieldModel
from ..errors import ConfigError, DomainError
from ..neural import TrainConfig

__all__ = [
    "KINDS",
    "CONFIG_SCHEMA",
    "NetworkConfig",
    "ExperimentConfig",
    "load_config",
]

KINDS = ("fft-mlp", "avg-forecast", "pod-lstm")

_fraction = {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1}
_train_schema = {
    "type": "object",
    "additionalProperties": False,
    "properties": {
        "learning_rate": {"type": "number", "exclusiveMinimum": 0},
        "batch_size": {"type": "integer", "minimum": 1},
        "max_epochs": {"type": "integer", "minimum": 1},
        "patience": {"type": "integer", "minimum": 1},
        "validation_fraction": {"type": "number", "exclusiveMinimum": 0, "maximum": 0.5},
    },
}
_levels = {"type": "array", "minItems": 5, "maxItems": 5, "items": {"type": "number"}}

CONFIG_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["kind"],
    "properties": {
        "kind": {"enum": list(KINDS)},
        "seed": {"type": "integer", "minimum": 0},
        "output_dir": {"type": "string"},
        "field_model": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "n_nodes": {"type": "integer", "minimum": 2},
                "arc_half_length": {"type": "number", "exclusiveMinimum": 0},
                "stagnation_peak": {"type": "number", "exclusiveMinimum": 0},
                "decay_width": {"type": "number", "exclusiveMinimum": 0},
                "velocity_exponent": {"type": "number"},
                "lag_per_unit_s": {"type": "number", "minimum": 0},
                "baseline": {"type": "number"},
            },
        },
        "levels": {"type": "array", "minItems": 3, "maxItems": 3, "items": _levels},
        "cases": {
            "type": "array",
            "minItems": 2,
            "items": {"type": "array", "minItems": 3, "maxItems": 3, "items": {"type": "number"}},
        },
        "test_count": {"type": "integer", "minimum": 1},
        "components": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "minItems": 2, "maxItems": 2, "items": {"type": "number"}},
        },
        "samples_per_cycle": {"type": "integer", "minimum": 4},
        "n_cycles": {"type": "integer", "minimum": 1},
        "window": {"type": "integer", "minimum": 2},
        "train_fraction": _fraction,
        "transformer_train_fraction": _fraction,
        "energy_threshold": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
        "center": {"type": "boolean"},
        "signature_k": {"type": "integer", "minimum": 1},
        "error_budget": _fraction,
        "mlp": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "hidden_sizes": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                "train": _train_schema,
            },
        },
        "lstm": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "hidden_size": {"type": "integer", "minimum": 1},
                "train": _train_schema,
            },
        },
        "transformer": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "model_dim": {"type": "integer", "minimum": 2},
                "head_count": {"type": "integer", "minimum": 1},
                "layer_count": {"type": "integer", "minimum": 1},
                "ff_dim": {"type": "integer", "minimum": 1},
                "train": _train_schema,
            },
        },
    },
}


@dataclass(frozen=True)
class NetworkConfig:
    """Architecture options for one network plus its training settings."""

    options: dict
    train: TrainConfig

    def to_dict(self):
        t = asdict(self.train)
        t.pop("seed")
        return {**self.options, "train": t}


DEFAULT_NETWORKS = {
    "mlp": ({"hidden_sizes": [64, 64]},
            {"learning_rate": 1e-3, "batch_size": 16, "max_epochs": 10000, "patience": 2000,
             "validation_fraction": 0.2}),
    "lstm": ({"hidden_size": 64},
             {"learning_rate": 1e-3, "batch_size": 32, "max_epochs": 1000, "patience": 50,
              "validation_fraction": 0.2}),
    "transformer": ({"model_dim": 32, "head_count": 4, "layer_count": 2, "ff_dim": 64},
                    {"learning_rate": 1e-3, "batch_size": 32, "max_epochs": 1500, "patience": 100,
                     "validation_fraction": 0.2}),
}

# per-network seed offsets keep the three initializations distinct
SEED_OFFSETS = {"mlp": 0, "lstm": 1, "transformer": 2}


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str
    seed: int = 0
    output_dir: str = None
    field_model: SyntheticFieldModel = field(default_factory=SyntheticFieldModel)
    levels: tuple = DEFAULT_LEVELS
    cases: tuple = None
    test_count: int = 4
    components: tuple = tuple(zip(RANDOM_MULTI_U, RANDOM_MULTI_F))
    samples_per_cycle: int = 100
    n_cycles: int = None
    window: int = 20
    train_fraction: float = 0.8
    transformer_train_fraction: float = 0.5
    energy_threshold: float = 0.99
    center: bool = False
    signature_k: int = 10
    error_budget: float = 0.05
    mlp: NetworkConfig = None
    lstm: NetworkConfig = None
    transformer: NetworkConfig = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown experiment kind {self.kind!r}")
        if self.n_cycles is None:
            object.__setattr__(self, "n_cycles", 3 if self.kind == "fft-mlp" else 10)
        if self.output_dir is None:
            object.__setattr__(self, "output_dir", f"runs/{self.kind}")
        for name in ("mlp", "lstm", "transformer"):
            if getattr(self, name) is None:
                opts, train = DEFAULT_NETWORKS[name]
                object.__setattr__(self, name, NetworkConfig(
                    dict(opts), TrainConfig(seed=self.seed + SEED_OFFSETS[name], **train)))

    @classmethod
    def from_dict(cls, raw):
        """Validate ``raw`` against :data:`CONFIG_SCHEMA` and build a config."""
        try:
            jsonschema.validate(raw, CONFIG_SCHEMA)
        except jsonschema.ValidationError as exc:
            where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
            raise ConfigError(f"invalid config at {where}: {exc.message}") from None
        kw = {k: v for k, v in raw.items() if k not in ("field_model", "mlp", "lstm", "transformer")}
        seed = raw.get("seed", 0)
        try:
            if "field_model" in raw:
                kw["field_model"] = SyntheticFieldModel(**raw["field_model"])
            if "levels" in raw:
                kw["levels"] = tuple(tuple(float(v) for v in lv) for lv in raw["levels"])
                if any(len(set(lv)) != len(lv) for lv in kw["levels"]):
                    raise DomainError("levels within a factor must be distinct")
            if "cases" in raw:
                kw["cases"] = tuple(tuple(float(v) for v in c) for c in raw["cases"])
            if "components" in raw:
                kw["components"] = tuple((float(u), float(f)) for u, f in raw["components"])
            for name in ("mlp", "lstm", "transformer"):
                opts, train = DEFAULT_NETWORKS[name]
                given = raw.get(name, {})
                opts = {**opts, **{k: v for k, v in given.items() if k != "train"}}
                train = {**train, **given.get("train", {})}
                kw[name] = NetworkConfig(opts, TrainConfig(seed=seed + SEED_OFFSETS[name], **train))
            return cls(**kw)
        except DomainError as exc:
            raise ConfigError(f"invalid config: {exc}") from None

    def with_overrides(self, **changes):
        d = self.to_dict()
        d.update(changes)
        return ExperimentConfig.from_dict(d)

    def to_dict(self):
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, NetworkConfig):
                v = v.to_dict()
            elif isinstance(v, SyntheticFieldModel):
                v = asdict(v)
            elif isinstance(v, tuple):
                v = [list(x) if isinstance(x, tuple) else x for x in v]
            if v is None:
                continue
            out[f.name] = v
        return out

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def load_config(path):
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    return ExperimentConfig.from_dict(raw)
