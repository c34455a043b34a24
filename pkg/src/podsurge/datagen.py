"""Synthetic stand-in for the pulsed-jet CFD model.

Provides the inlet velocity laws, an analytic local-Nusselt field
generator and an L25 orthogonal-array case planner.
"""

import csv
import io
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError
from .pod import SnapshotMatrix

__all__ = [
    "H_OVER_D_RANGE",
    "FREQUENCY_RANGE",
    "U_JET_RANGE",
    "DEFAULT_LEVELS",
    "RANDOM_MULTI_U",
    "RANDOM_MULTI_F",
    "PULSE_AMPLITUDE",
    "CaseSpec",
    "CasePlan",
    "InletSignal",
    "SyntheticFieldModel",
    "l25_indices",
    "taguchi_l25",
    "inlet_velocity",
    "synthesize_nu_field",
    "average_nu",
    "plan_to_csv",
    "plan_from_csv",
]

H_OVER_D_RANGE = (2.0, 6.0)
FREQUENCY_RANGE = (5.0, 100.0)
U_JET_RANGE = (8.0, 16.0)

DEFAULT_LEVELS = (
    (2.0, 3.0, 4.0, 5.0, 6.0),
    (5.0, 25.0, 50.0, 75.0, 100.0),
    (8.0, 10.0, 12.0, 14.0, 16.0),
)
RANDOM_MULTI_U = (8.0, 10.0, 12.0, 14.0, 16.0)
RANDOM_MULTI_F = (5.0, 25.0, 50.0, 75.0, 100.0)
PULSE_AMPLITUDE = 0.75

N_TEST_CASES = 4


def _in_range(name, value, bounds):
    lo, hi = bounds
    if not (lo <= value <= hi):
        raise DomainError(f"{name}={value} outside [{lo}, {hi}]")


@dataclass(frozen=True)
class CaseSpec:
    h_over_d: float
    frequency: float
    u_jet: float

    def __post_init__(self):
        _in_range("h_over_d", self.h_over_d, H_OVER_D_RANGE)
        _in_range("frequency", self.frequency, FREQUENCY_RANGE)
        _in_range("u_jet", self.u_jet, U_JET_RANGE)

    def as_array(self):
        return np.array([self.h_over_d, self.frequency, self.u_jet])


@dataclass(frozen=True)
class CasePlan:
    cases: tuple
    train_indices: tuple
    test_indices: tuple

    def features(self):
        return np.array([c.as_array() for c in self.cases])


@dataclass(frozen=True)
class InletSignal:
    """Sampled inlet velocity ``sum_i U_i (1 + 0.75 sin(2 pi f_i t))``.

    A harmonic signal is the one-component case.
    """

    kind: str
    components: tuple
    times: np.ndarray
    values: np.ndarray

    @property
    def mean_velocity(self):
        return float(sum(u for u, _ in self.components))

    def evaluate(self, t):
        t = np.asarray(t, dtype=np.float64)
        out = np.zeros_like(t)
        for u, f in self.components:
            out = out + (u + PULSE_AMPLITUDE * u * np.sin(2.0 * np.pi * f * t))
        return out


@dataclass(frozen=True)
class SyntheticFieldModel:
    """Separable local-Nu model: stagnation peak x Gaussian envelope + baseline.

    The velocity response at arc position ``s`` lags the inlet by
    ``lag_per_unit_s * |s|`` seconds.
    """

    n_nodes: int = 200
    arc_half_length: float = 6.0
    stagnation_peak: float = 60.0
    decay_width: float = 2.0
    velocity_exponent: float = 0.8
    lag_per_unit_s: float = 0.002
    baseline: float = 10.0

    def __post_init__(self):
        if self.stagnation_peak <= 0:
            raise DomainError("stagnation_peak must be positive")
        if self.decay_width <= 0:
            raise DomainError("decay_width must be positive")
        if self.n_nodes < 1:
            raise DomainError("n_nodes must be >= 1")
        if self.arc_half_length <= 0:
            raise DomainError("arc_half_length must be positive")
        if self.lag_per_unit_s < 0:
            raise DomainError("lag_per_unit_s must be non-negative")

    def node_positions(self):
        return np.linspace(-self.arc_half_length, self.arc_half_length, self.n_nodes)


def l25_indices():
    """Level indices of the modular L25 array, shape (25, 3)."""
    i = np.arange(25)
    a, b = i // 5, i % 5
    return np.column_stack([a, b, (a + b) % 5])


def taguchi_l25(levels=DEFAULT_LEVELS):
    """Build the 25-case plan over (H/d, frequency, U_jet).

    Row ``i`` uses level indices ``(i // 5, i % 5, (i // 5 + i % 5) % 5)``,
    a strength-2 orthogonal array. The last four rows are held out for
    testing, the first 21 are for training.
    """
    if len(levels) != 3:
        raise ShapeError(f"expected 3 factors, got {len(levels)}")
    cols = []
    for j, lv in enumerate(levels):
        lv = [float(v) for v in lv]
        if len(lv) != 5:
            raise ShapeError(f"factor {j} needs 5 levels, got {len(lv)}")
        if len(set(lv)) != 5:
            raise DomainError(f"factor {j} has duplicate levels: {lv}")
        cols.append(lv)
    idx = l25_indices()
    cases = tuple(
        CaseSpec(cols[0][r[0]], cols[1][r[1]], cols[2][r[2]]) for r in idx
    )
    n_train = len(cases) - N_TEST_CASES
    return CasePlan(
        cases=cases,
        train_indices=tuple(range(n_train)),
        test_indices=tuple(range(n_train, len(cases))),
    )


def plan_to_csv(plan):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["Case", "H/d", "Fr", "V"])
    for i, c in enumerate(plan.cases, start=1):
        w.writerow([i, repr(c.h_over_d), repr(c.frequency), repr(c.u_jet)])
    return buf.getvalue()


def plan_from_csv(text, n_test=N_TEST_CASES):
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["Case", "H/d", "Fr", "V"]:
        raise ShapeError("case-plan CSV must start with header Case,H/d,Fr,V")
    cases = tuple(CaseSpec(float(r[1]), float(r[2]), float(r[3])) for r in rows[1:])
    n_train = len(cases) - n_test
    return CasePlan(cases, tuple(range(n_train)), tuple(range(n_train, len(cases))))


def inlet_velocity(spec, times):
    """Sample the inlet law for a harmonic case or a component list.

    ``spec`` is either a :class:`CaseSpec` or an iterable of ``(U_i, f_i)``
    pairs, each contributing ``U_i + 0.75 U_i sin(2 pi f_i t)``.
    """
    t = np.asarray(times, dtype=np.float64)
    if t.ndim != 1 or t.size == 0:
        raise ShapeError("times must be a non-empty 1-D array")
    if t.size > 1 and np.any(np.diff(t) <= 0):
        raise DomainError("times must be strictly increasing")
    if isinstance(spec, CaseSpec):
        kind = "harmonic"
        comps = ((float(spec.u_jet), float(spec.frequency)),)
    else:
        comps = tuple((float(u), float(f)) for u, f in spec)
        if not comps:
            raise DomainError("component list is empty")
        kind = "harmonic" if len(comps) == 1 else "random-multi"
    sig = InletSignal(kind=kind, components=comps, times=t, values=np.empty(0))
    return InletSignal(kind=kind, components=comps, times=t, values=sig.evaluate(t))


def synthesize_nu_field(model, signal, times=None):
    """Local Nu snapshots for ``signal`` under ``model``.

    ``Nu(s, t) = peak * (V(t - lag |s|) / V_ref)^gamma * exp(-s^2 / 2w^2) + baseline``
    with ``V_ref`` the mean inlet velocity of the signal.
    """
    t = signal.times if times is None else np.asarray(times, dtype=np.float64)
    s = model.node_positions()
    delayed = t[None, :] - model.lag_per_unit_s * np.abs(s)[:, None]
    ratio = signal.evaluate(delayed) / signal.mean_velocity
    envelope = np.exp(-(s**2) / (2.0 * model.decay_width**2))
    values = model.stagnation_peak * ratio**model.velocity_exponent * envelope[:, None]
    values = values + model.baseline
    coords = np.column_stack([s, np.zeros_like(s)])
    return SnapshotMatrix(values=values, times=t, node_coords=coords)


def average_nu(snapshots):
    """Arithmetic mean over nodes for every snapshot (uniform grid)."""
    return snapshots.values.mean(axis=0)
