"""The three surrogate experiments and the run workspace they share.

A :class:`Run` resolves named artifacts (plan, snapshots, basis, trained
networks, predictions, report) from memory, then from its output
directory, and otherwise produces them. The in-process ``run_*`` helpers
and the CLI stages therefore share a single code path; the CLI runs in
strict mode so a stage never silently regenerates its inputs.
"""

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..datagen import (
    CasePlan,
    CaseSpec,
    average_nu,
    inlet_velocity,
    plan_from_csv,
    plan_to_csv,
    synthesize_nu_field,
    taguchi_l25,
)
from ..errors import ArtifactError, ConfigError
from ..neural import (
    LstmParams,
    MlpParams,
    TrainReport,
    TransformerParams,
    forecast_rollout,
    make_windows,
    train,
)
from ..pod import (
    basis_texts,
    compute_pod,
    cumulative_energy_curve,
    load_basis,
    reconstruct,
    save_basis,
    snapshots_from_csv,
    snapshots_to_csv,
)
from ..spectral import SpectralSignature, extract_signature, reconstruct_from_signature
from . import artifacts as art
from .metrics import error_map_percent, horizon_steps, pointwise_relative_error, relative_l2

__all__ = [
    "EvaluationReport",
    "Run",
    "run_fft_mlp",
    "run_avg_forecast",
    "run_pod_lstm",
    "run_experiment",
    "build_plan",
    "random_multi_times",
    "case_cycle",
    "mode_error_contributions",
    "stagnation_nodes",
]

NETWORKS_BY_KIND = {
    "fft-mlp": ("mlp",),
    "avg-forecast": ("lstm", "transformer"),
    "pod-lstm": ("pod_lstm",),
}


@dataclass
class EvaluationReport:
    kind: str
    metrics: dict
    details: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)

    def to_dict(self):
        return {"kind": self.kind, "metrics": self.metrics, "details": self.details, "inputs": self.inputs}

    def to_json(self):
        return art.dumps_json(self.to_dict())

    @classmethod
    def from_json(cls, text):
        d = json.loads(text)
        return cls(kind=d["kind"], metrics=d["metrics"], details=d["details"], inputs=d["inputs"])


# -- data generation ---------------------------------------------------------


def build_plan(cfg):
    """Explicit ``cases`` from the config, else the L25 over ``levels``."""
    if cfg.cases is not None:
        cases = tuple(CaseSpec(*c) for c in cfg.cases)
        if cfg.test_count >= len(cases):
            raise ConfigError("test_count must leave at least one training case")
        n_train = len(cases) - cfg.test_count
        return CasePlan(cases, tuple(range(n_train)), tuple(range(n_train, len(cases))))
    return taguchi_l25(cfg.levels)


def random_multi_times(cfg):
    """Uniform grid over ``n_cycles`` periods of the slowest component."""
    period = 1.0 / min(f for _, f in cfg.components)
    n = cfg.samples_per_cycle * cfg.n_cycles
    return np.arange(n) * (period / cfg.samples_per_cycle)


def case_cycle(cfg, case):
    """Local-Nu snapshots over the last of ``n_cycles`` pulse periods of a harmonic case."""
    spc = cfg.samples_per_cycle
    dt = 1.0 / (case.frequency * spc)
    n = spc * cfg.n_cycles
    times = np.arange(n - spc, n) * dt
    signal = inlet_velocity(case, times)
    return synthesize_nu_field(cfg.field_model, signal)


def _thread_count():
    raw = os.environ.get("PODSURGE_THREADS")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"PODSURGE_THREADS must be an integer, got {raw!r}") from None


def stagnation_nodes(coords):
    """Indices of the nodes closest to the jet axis (s = 0)."""
    dist = np.abs(coords[:, 0])
    return np.flatnonzero(np.isclose(dist, dist.min(), rtol=0.0, atol=1e-12))


def mode_error_contributions(basis, perturbation=1.0):
    """Field error norm caused by a unit error in each normalized temporal coefficient.

    The coefficients are ``lambda_n * v_n(t)``; perturbing ``v_n`` by
    ``perturbation`` moves the reconstructed field by ``lambda_n`` times
    that amount along the unit mode, so the returned norms scale with the
    singular values.
    """
    out = np.empty(basis.n_kept)
    for n in range(basis.n_kept):
        delta = np.zeros(basis.n_kept)
        delta[n] = basis.singular_values[n] * perturbation
        base = reconstruct(basis, np.zeros(basis.n_kept))
        out[n] = np.linalg.norm(reconstruct(basis, delta) - base)
    return out


# -- workspace ---------------------------------------------------------------


class Run:
    """Artifact resolver for one experiment configuration.

    Parameters
    ----------
    cfg : ExperimentConfig
    out_dir : path or None
        Where artifacts are read from and written to. ``None`` keeps
        everything in memory.
    strict : bool
        If true, a missing input artifact raises :class:`ArtifactError`
        instead of being produced.
    reuse : bool
        Load artifacts already present in ``out_dir``. Off for end-to-end
        runs so stale files from an earlier configuration are overwritten.
    """

    def __init__(self, cfg, out_dir=None, strict=False, reuse=True):
        self.cfg = cfg
        self.out = None if out_dir is None else Path(out_dir)
        self.strict = strict
        self.reuse = reuse
        self._cache = {}

    # paths -----------------------------------------------------------------

    def path(self, *parts):
        if self.out is None:
            raise ArtifactError("run has no output directory")
        return self.out.joinpath(*parts)

    def _exists(self, name):
        if self.out is None:
            return False
        return self.path(self._primary_file(name)).is_file()

    def _primary_file(self, name):
        if name == "plan":
            return "plan.csv"
        if name == "snapshots":
            return "snapshots.csv"
        if name == "cycles":
            return "cycles/manifest.json"
        if name == "basis":
            return "pod_basis.json"
        if name.startswith("train:"):
            return f"{name[6:]}_model.json"
        if name.startswith("forecast:"):
            return f"forecast_{name[9:]}.csv"
        if name == "report":
            return "report.json"
        raise KeyError(name)

    # generic resolution ----------------------------------------------------

    def get(self, name):
        if name in self._cache:
            return self._cache[name]
        if self.reuse and self._exists(name):
            value = self._load(name)
        elif self.strict:
            target = self._primary_file(name)
            where = self.out if self.out is not None else "<memory>"
            raise ArtifactError(f"missing artifact: {target} in {where}")
        else:
            value = self.produce(name)
            return value
        self._cache[name] = value
        return value

    def produce(self, name):
        """Compute ``name`` from its inputs, cache it and persist it."""
        producer = getattr(self, "_make_" + name.split(":")[0])
        value = producer(*name.split(":")[1:])
        self._cache[name] = value
        if self.out is not None:
            self._save(name, value)
        return value

    def text_digest(self, name):
        """Digest of the serialized form of an artifact (same bytes as on disk)."""
        return art.digest(self._serialize(name, self.get(name)))

    # serialization ---------------------------------------------------------

    def _serialize(self, name, value):
        if name == "plan":
            return plan_to_csv(value)
        if name == "snapshots":
            return snapshots_to_csv(value)
        if name == "cycles":
            return "".join(snapshots_to_csv(s) for s in value)
        if name == "basis":
            return "".join(basis_texts(value).values())
        if name.startswith("train:"):
            return art.model_to_json(value.model)
        if name.startswith("forecast:"):
            return self._forecast_csv(value)
        if name == "report":
            return value.to_json()
        raise KeyError(name)

    def _save(self, name, value):
        if name == "basis":
            save_basis(value, self.out)
            return
        if name == "cycles":
            names = []
            for i, snap in enumerate(value, start=1):
                fname = f"case_{i:02d}.csv"
                art.write_text(self.path("cycles", fname), snapshots_to_csv(snap))
                names.append(fname)
            art.write_text(self.path("cycles", "manifest.json"), art.dumps_json({"cases": names}))
            return
        if name.startswith("train:"):
            net = name[6:]
            art.write_text(self.path(f"{net}_model.json"), art.model_to_json(value.model))
            art.write_text(self.path(f"{net}_loss.csv"), art.loss_to_csv(value))
            return
        art.write_text(self.path(self._primary_file(name)), self._serialize(name, value))

    def _load(self, name):
        read = lambda fname: art.read_text(self.path(fname))  # noqa: E731
        if name == "plan":
            return plan_from_csv(read("plan.csv"), n_test=self.cfg.test_count)
        if name == "snapshots":
            return snapshots_from_csv(read("snapshots.csv"))
        if name == "cycles":
            manifest = json.loads(read("cycles/manifest.json"))
            return [snapshots_from_csv(read(f"cycles/{f}")) for f in manifest["cases"]]
        if name == "basis":
            return load_basis(self.path("pod_basis.json"))
        if name.startswith("train:"):
            net = name[6:]
            model = art.model_from_json(read(f"{net}_model.json"))
            loss_path = self.path(f"{net}_loss.csv")
            report = TrainReport(model=model)
            if loss_path.is_file():
                _, tr, va = art.loss_from_csv(loss_path.read_text(encoding="utf-8"))
                report.train_loss, report.val_loss = list(tr), list(va)
                report.best_epoch = int(np.argmin(va)) if len(va) else 0
                report.stopped_epoch = len(va) - 1
            return report
        if name.startswith("forecast:"):
            _, cols = art.table_from_csv(read(self._primary_file(name)))
            return self._forecast_from_columns(name[9:], cols)
        if name == "report":
            return EvaluationReport.from_json(read("report.json"))
        raise KeyError(name)

    # producers: data -------------------------------------------------------

    def _make_plan(self):
        return build_plan(self.cfg)

    def _make_snapshots(self):
        times = random_multi_times(self.cfg)
        signal = inlet_velocity(self.cfg.components, times)
        return synthesize_nu_field(self.cfg.field_model, signal)

    def _make_cycles(self):
        plan = self.get("plan")
        with ThreadPoolExecutor(max_workers=_thread_count()) as pool:
            return list(pool.map(lambda c: case_cycle(self.cfg, c), plan.cases))

    def _make_basis(self):
        snaps = self.get("snapshots")
        return compute_pod(snaps, self.cfg.energy_threshold, center=self.cfg.center)

    # derived in-memory quantities -------------------------------------------

    def fft_mlp_dataset(self):
        """Design features, flattened signatures, true cycles and sample rates per case."""
        plan = self.get("plan")
        cycles = self.get("cycles")
        k = self.cfg.signature_k
        spc = self.cfg.samples_per_cycle
        feats, targets, curves, rates = [], [], [], []
        for case, snap in zip(plan.cases, cycles):
            curve = average_nu(snap)
            rate = case.frequency * spc
            sig = extract_signature(curve, rate, k)
            feats.append(case.as_array())
            targets.append(sig.flatten())
            curves.append(curve)
            rates.append(rate)
        return np.array(feats), np.array(targets), np.array(curves), np.array(rates)

    def avg_series(self):
        return average_nu(self.get("snapshots"))

    def _split_fraction(self, net):
        if net == "transformer":
            return self.cfg.transformer_train_fraction
        return self.cfg.train_fraction

    def _series_for(self, net):
        if net == "pod_lstm":
            return self.get("basis").temporal_coefficients.T
        return self.avg_series()[:, None]

    def windows(self, net):
        return make_windows(self._series_for(net), self.cfg.window, self._split_fraction(net))

    # producers: training ---------------------------------------------------

    def _make_train(self, net):
        cfg = self.cfg
        if net == "mlp":
            plan = self.get("plan")
            x, y, _, _ = self.fft_mlp_dataset()
            sizes = [x.shape[1], *cfg.mlp.options["hidden_sizes"], y.shape[1]]
            model = MlpParams(sizes, seed=cfg.mlp.train.seed)
            idx = list(plan.train_indices)
            return train(model, x[idx], cfg.mlp.train, targets=y[idx])
        ds = self.windows(net)
        width = ds.series.shape[1]
        if net in ("lstm", "pod_lstm"):
            model = LstmParams(width, cfg.lstm.options["hidden_size"], width, seed=cfg.lstm.train.seed)
            return train(model, ds, cfg.lstm.train)
        if net == "transformer":
            o = cfg.transformer.options
            model = TransformerParams(width, width, model_dim=o["model_dim"], head_count=o["head_count"],
                                      layer_count=o["layer_count"], ff_dim=o["ff_dim"],
                                      seed=cfg.transformer.train.seed)
            return train(model, ds, cfg.transformer.train)
        raise KeyError(net)

    # producers: prediction -------------------------------------------------

    def _make_forecast(self, net):
        if net == "mlp":
            plan = self.get("plan")
            model = self.get("train:mlp").model
            x, _, _, _ = self.fft_mlp_dataset()
            idx = list(plan.test_indices)
            return {"cases": np.array(idx) + 1, "signatures": model.predict(x[idx])}
        ds = self.windows(net)
        model = self.get(f"train:{net}").model
        seed = ds.series[ds.split_index - ds.window: ds.split_index]
        horizon = ds.series.shape[0] - ds.split_index
        pred = forecast_rollout(model, seed, horizon)
        times = self.get("snapshots").times[ds.split_index:]
        return {"times": times, "values": pred}

    def _forecast_csv(self, value):
        if "signatures" in value:
            sig = value["signatures"]
            k = sig.shape[1] // 3
            header = ["case"] + [f"{q}{j}" for j in range(k) for q in ("frequency", "amplitude", "phase")]
            cols = [[int(c) for c in value["cases"]]] + [list(map(float, sig[:, j])) for j in range(sig.shape[1])]
            return art.table_to_csv(header, cols)
        vals = value["values"]
        header = ["step", "time"] + [f"value{j}" for j in range(vals.shape[1])]
        cols = [list(range(vals.shape[0])), list(map(float, value["times"]))]
        cols += [list(map(float, vals[:, j])) for j in range(vals.shape[1])]
        return art.table_to_csv(header, cols)

    def _forecast_from_columns(self, net, cols):
        if net == "mlp":
            names = [h for h in cols if h != "case"]
            return {"cases": cols["case"].astype(int), "signatures": np.column_stack([cols[h] for h in names])}
        names = sorted((h for h in cols if h.startswith("value")), key=lambda h: int(h[5:]))
        return {"times": cols["time"], "values": np.column_stack([cols[h] for h in names])}

    # producers: evaluation -------------------------------------------------

    def _inputs(self, names):
        out = {"config": art.digest(self.cfg.to_json())}
        for n in names:
            out[n] = self.text_digest(n)
        return out

    def _make_report(self):
        kind = self.cfg.kind
        for net in NETWORKS_BY_KIND[kind]:
            self.get(f"train:{net}")
        if kind == "fft-mlp":
            return self._report_fft_mlp()
        if kind == "avg-forecast":
            return self._report_avg_forecast()
        return self._report_pod_lstm()

    def _report_fft_mlp(self):
        cfg = self.cfg
        plan = self.get("plan")
        _, targets, curves, rates = self.fft_mlp_dataset()
        pred = self.get("forecast:mlp")
        spc = cfg.samples_per_cycle
        rows = []
        for case_no, flat in zip(pred["cases"], pred["signatures"]):
            i = int(case_no) - 1
            sig = SpectralSignature.from_flat(flat, rates[i])
            tau = np.arange(spc) / rates[i]
            approx = reconstruct_from_signature(sig, tau)
            # floor set by the k-term truncation alone (true signature)
            best = reconstruct_from_signature(SpectralSignature.from_flat(targets[i], rates[i]), tau)
            c = plan.cases[i]
            rows.append({
                "case": int(case_no),
                "h_over_d": c.h_over_d,
                "frequency": c.frequency,
                "u_jet": c.u_jet,
                "relative_l2": relative_l2(curves[i], approx),
                "oracle_relative_l2": relative_l2(curves[i], best),
            })
        errs = [r["relative_l2"] for r in rows]
        rep = self.get("train:mlp")
        return EvaluationReport(
            kind="fft-mlp",
            metrics={
                "max_relative_l2": max(errs),
                "mean_relative_l2": float(np.mean(errs)),
                "n_train": len(plan.train_indices),
                "n_test": len(plan.test_indices),
            },
            details={
                "cases": rows,
                "best_epoch": {"mlp": int(rep.best_epoch)},
                "loss_curves": {"mlp": "mlp_loss.csv"},
            },
            inputs=self._inputs(["plan", "cycles", "train:mlp", "forecast:mlp"]),
        )

    def _report_avg_forecast(self):
        cfg = self.cfg
        series = self.avg_series()
        models = {}
        for net in ("lstm", "transformer"):
            ds = self.windows(net)
            truth = series[ds.split_index:]
            pred = self.get(f"forecast:{net}")["values"][:, 0]
            steps = horizon_steps(truth, pred, cfg.error_budget)
            pointwise = pointwise_relative_error(truth, pred)
            models[net] = {
                "train_fraction": self._split_fraction(net),
                "forecast_steps": int(truth.size),
                "relative_l2": relative_l2(truth, pred),
                "horizon_steps": steps,
                "horizon_fraction": steps / series.size,
                "max_pointwise_relative_error": float(pointwise.max()),
                "max_error_step": int(np.argmax(pointwise)),
                "best_epoch": int(self.get(f"train:{net}").best_epoch),
            }
        return EvaluationReport(
            kind="avg-forecast",
            metrics={
                "error_budget": cfg.error_budget,
                "lstm_horizon_fraction": models["lstm"]["horizon_fraction"],
                "transformer_horizon_fraction": models["transformer"]["horizon_fraction"],
                "lstm_relative_l2": models["lstm"]["relative_l2"],
                "transformer_relative_l2": models["transformer"]["relative_l2"],
            },
            details={
                "models": models,
                "series_length": int(series.size),
                "loss_curves": {n: f"{n}_loss.csv" for n in ("lstm", "transformer")},
            },
            inputs=self._inputs(["snapshots", "train:lstm", "train:transformer",
                                 "forecast:lstm", "forecast:transformer"]),
        )

    def pod_lstm_fields(self):
        """True and reconstructed horizon fields plus the truncation-only field."""
        snaps = self.get("snapshots")
        basis = self.get("basis")
        ds = self.windows("pod_lstm")
        start = ds.split_index
        truth = snaps.values[:, start:]
        coeff_pred = self.get("forecast:pod_lstm")["values"].T
        pred = reconstruct(basis, coeff_pred)
        oracle = reconstruct(basis, basis.temporal_coefficients[:, start:])
        return truth, pred, oracle, coeff_pred

    def _report_pod_lstm(self):
        snaps = self.get("snapshots")
        basis = self.get("basis")
        ds = self.windows("pod_lstm")
        truth, pred, oracle, coeff_pred = self.pod_lstm_fields()
        emap = error_map_percent(truth, pred)
        worst = int(np.argmax(emap))
        # split the map: POD truncation alone, and forecast deviation alone
        trunc_map = error_map_percent(truth, oracle)
        fcst_map = error_map_percent(truth, truth + (pred - oracle))
        stag = stagnation_nodes(snaps.node_coords)
        i95 = self.snapshot_index_095()
        coeff_true = basis.temporal_coefficients[:, ds.split_index:]
        modes = []
        for n in range(basis.n_kept):
            modes.append({
                "mode": n + 1,
                "singular_value": float(basis.singular_values[n]),
                "coefficient_relative_l2": relative_l2(coeff_true[n], coeff_pred[n]),
            })
        cum = cumulative_energy_curve(basis)
        return EvaluationReport(
            kind="pod-lstm",
            metrics={
                "n_kept": basis.n_kept,
                "energy_captured": basis.energy_captured,
                "relative_l2": relative_l2(truth, pred),
                "truncation_relative_l2": relative_l2(truth, oracle),
                "max_error_percent": float(emap[worst]),
                "max_error_node": worst,
                "max_error_s": float(snaps.node_coords[worst, 0]),
                "max_error_at_stagnation": bool(worst in stag),
                "truncation_max_error_node": int(np.argmax(trunc_map)),
                "forecast_max_error_node": int(np.argmax(fcst_map)),
                "field_095_relative_l2": relative_l2(snaps.values[:, i95], pred[:, i95 - ds.split_index]),
            },
            details={
                "stagnation_nodes": [int(i) for i in stag],
                "snapshot_095_index": i95,
                "snapshot_095_time": float(snaps.times[i95]),
                "forecast_start_index": ds.split_index,
                "cumulative_energy": [float(v) for v in cum[: max(basis.n_kept, 10)]],
                "modes": modes,
                "loss_curves": {"pod_lstm": "pod_lstm_loss.csv"},
                "best_epoch": {"pod_lstm": int(self.get("train:pod_lstm").best_epoch)},
            },
            inputs=self._inputs(["snapshots", "basis", "train:pod_lstm", "forecast:pod_lstm"]),
        )

    def snapshot_index_095(self):
        """Snapshot nearest to 0.95 of the final time (forecast horizon only)."""
        times = self.get("snapshots").times
        start = self.windows("pod_lstm").split_index
        target = 0.95 * times[-1]
        idx = int(np.argmin(np.abs(times - target)))
        return max(idx, start)

    # plot-ready tables -----------------------------------------------------

    def write_plot_tables(self):
        """Write tidy CSVs under ``plots/`` for every figure-like output; return paths."""
        kind = self.cfg.kind
        written = []

        def put(name, header, cols):
            written.append(art.write_text(self.path("plots", name), art.table_to_csv(header, cols)))

        for net in NETWORKS_BY_KIND[kind]:
            rep = self.get(f"train:{net}")
            put(f"loss_{net}.csv", ["epoch", "train_loss", "val_loss"],
                [list(range(len(rep.train_loss))), list(map(float, rep.train_loss)), list(map(float, rep.val_loss))])
        if kind == "fft-mlp":
            _, _, curves, rates = self.fft_mlp_dataset()
            pred = self.get("forecast:mlp")
            spc = self.cfg.samples_per_cycle
            case_col, t_col, true_col, pred_col = [], [], [], []
            for case_no, flat in zip(pred["cases"], pred["signatures"]):
                i = int(case_no) - 1
                tau = np.arange(spc) / rates[i]
                approx = reconstruct_from_signature(SpectralSignature.from_flat(flat, rates[i]), tau)
                case_col += [int(case_no)] * spc
                t_col += list(map(float, tau))
                true_col += list(map(float, curves[i]))
                pred_col += list(map(float, approx))
            put("nu_curves.csv", ["case", "time", "nu_true", "nu_pred"], [case_col, t_col, true_col, pred_col])
        elif kind == "avg-forecast":
            series = self.avg_series()
            times = self.get("snapshots").times
            for net in ("lstm", "transformer"):
                ds = self.windows(net)
                pred = self.get(f"forecast:{net}")["values"][:, 0]
                full = np.full(series.size, np.nan)
                full[ds.split_index:] = pred
                put(f"nu_curve_{net}.csv", ["time", "nu_true", "nu_pred", "is_forecast"],
                    [list(map(float, times)), list(map(float, series)),
                     [float(v) if np.isfinite(v) else "" for v in full],
                     [int(j >= ds.split_index) for j in range(series.size)]])
        else:
            snaps = self.get("snapshots")
            basis = self.get("basis")
            cum = cumulative_energy_curve(basis)
            put("cumulative_energy.csv", ["mode", "singular_value", "cumulative_energy"],
                [list(range(1, cum.size + 1)), list(map(float, basis.singular_values)), list(map(float, cum))])
            truth, pred, _, coeff_pred = self.pod_lstm_fields()
            emap = error_map_percent(truth, pred)
            s = snaps.node_coords[:, 0]
            put("error_map.csv", ["node", "s", "error_percent"],
                [list(range(s.size)), list(map(float, s)), list(map(float, emap))])
            start = self.windows("pod_lstm").split_index
            i95 = self.snapshot_index_095()
            put("field_095.csv", ["node", "s", "nu_true", "nu_pred"],
                [list(range(s.size)), list(map(float, s)), list(map(float, snaps.values[:, i95])),
                 list(map(float, pred[:, i95 - start]))])
            mode_col, t_col, true_col, pred_col = [], [], [], []
            for n in range(basis.n_kept):
                for j, t in enumerate(snaps.times):
                    mode_col.append(n + 1)
                    t_col.append(float(t))
                    true_col.append(float(basis.temporal_coefficients[n, j]))
                    pred_col.append(float(coeff_pred[n, j - start]) if j >= start else "")
            put("coefficients.csv", ["mode", "time", "alpha_true", "alpha_pred"],
                [mode_col, t_col, true_col, pred_col])
        return written


# -- end-to-end --------------------------------------------------------------


def _run(cfg, kind, out_dir):
    if cfg.kind != kind:
        raise ConfigError(f"config kind is {cfg.kind!r}, expected {kind!r}")
    run = Run(cfg, out_dir=out_dir, reuse=False)
    return run.produce("report")


def run_fft_mlp(cfg, out_dir=None):
    """Taguchi cases -> last-cycle average Nu -> top-k signatures -> MLP -> test-case curves."""
    return _run(cfg, "fft-mlp", out_dir)


def run_avg_forecast(cfg, out_dir=None):
    """LSTM (train_fraction split) and Transformer (transformer_train_fraction) rollouts of average Nu."""
    return _run(cfg, "avg-forecast", out_dir)


def run_pod_lstm(cfg, out_dir=None):
    """POD of the random-multi field, LSTM on temporal coefficients, field reconstruction."""
    return _run(cfg, "pod-lstm", out_dir)


def run_experiment(cfg, out_dir=None):
    return {"fft-mlp": run_fft_mlp, "avg-forecast": run_avg_forecast, "pod-lstm": run_pod_lstm}[cfg.kind](
        cfg, out_dir)
