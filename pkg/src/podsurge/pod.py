"""Snapshot POD: basis construction, truncation, projection and I/O."""

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError, ShapeError
from .linalg import as_matrix, svd

__all__ = [
    "SnapshotMatrix",
    "PodBasis",
    "compute_pod",
    "project",
    "reconstruct",
    "cumulative_energy_curve",
    "energy_fractions",
    "snapshots_to_csv",
    "snapshots_from_csv",
    "matrix_to_csv",
    "matrix_from_csv",
    "basis_texts",
    "save_basis",
    "load_basis",
]


@dataclass(frozen=True)
class SnapshotMatrix:
    """Scalar field at ``n_nodes`` nodes (rows) and ``n_snapshots`` times (columns)."""

    values: np.ndarray
    times: np.ndarray
    node_coords: np.ndarray = None

    def __post_init__(self):
        values = as_matrix(self.values, "snapshot values")
        times = np.asarray(self.times, dtype=np.float64)
        if times.ndim != 1 or times.size != values.shape[1]:
            raise ShapeError(f"need {values.shape[1]} times, got shape {times.shape}")
        if times.size > 1 and np.any(np.diff(times) <= 0):
            raise DomainError("snapshot times must be strictly increasing")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "times", times)
        if self.node_coords is not None:
            coords = np.asarray(self.node_coords, dtype=np.float64)
            if coords.shape != (values.shape[0], 2):
                raise ShapeError(f"node_coords must be ({values.shape[0]}, 2), got {coords.shape}")
            object.__setattr__(self, "node_coords", coords)

    @property
    def n_nodes(self):
        return self.values.shape[0]

    @property
    def n_snapshots(self):
        return self.values.shape[1]

    def select(self, columns):
        coords = self.node_coords
        return SnapshotMatrix(self.values[:, columns], self.times[columns], coords)


@dataclass(frozen=True)
class PodBasis:
    """Truncated POD basis.

    ``temporal_coefficients`` carry the singular values
    (``alpha = Sigma_N V_N^T``) so ``modes @ temporal_coefficients`` is the
    rank-N approximation of the (optionally centered) snapshots.
    """

    modes: np.ndarray
    singular_values: np.ndarray
    n_kept: int
    energy_captured: float
    temporal_coefficients: np.ndarray
    mean: np.ndarray = None

    @property
    def n_nodes(self):
        return self.modes.shape[0]

    def approximation(self):
        out = self.modes @ self.temporal_coefficients
        if self.mean is not None:
            out = out + self.mean[:, None]
        return out


def energy_fractions(singular_values):
    s2 = np.asarray(singular_values, dtype=np.float64) ** 2
    total = s2.sum()
    if total == 0.0:
        raise DomainError("all singular values are zero")
    return np.cumsum(s2) / total


def compute_pod(snapshots, energy_threshold=0.99, center=False):
    """POD of a snapshot matrix keeping the fewest modes reaching the threshold.

    Parameters
    ----------
    snapshots : SnapshotMatrix
    energy_threshold : float
        Required fraction of ``sum(lambda^2)`` in (0, 1].
    center : bool
        Subtract the time-mean field before the SVD. Off by default.
    """
    if not (0.0 < energy_threshold <= 1.0):
        raise DomainError(f"energy_threshold must be in (0, 1], got {energy_threshold}")
    if snapshots.n_snapshots < 2:
        raise DomainError("POD needs at least two snapshots")
    values = snapshots.values
    mean = None
    if center:
        mean = values.mean(axis=1)
        values = values - mean[:, None]
    if not np.any(values):
        raise DomainError("snapshot matrix is identically zero")
    dec = svd(values)
    sv = dec.singular_values
    cum = energy_fractions(sv)
    # roundoff can leave cum[-1] a hair below 1
    cum[-1] = 1.0
    n_kept = int(np.searchsorted(cum, energy_threshold, side="left") + 1)
    n_kept = min(n_kept, sv.size)
    modes = dec.u[:, :n_kept].copy()
    vt = dec.vt[:n_kept].copy()
    # largest-magnitude entry of each mode is made positive
    pivot = modes[np.argmax(np.abs(modes), axis=0), np.arange(n_kept)]
    flip = np.where(pivot < 0, -1.0, 1.0)
    modes *= flip
    vt *= flip[:, None]
    coeffs = sv[:n_kept, None] * vt
    return PodBasis(
        modes=modes,
        singular_values=sv.copy(),
        n_kept=n_kept,
        energy_captured=float(cum[n_kept - 1]),
        temporal_coefficients=coeffs,
        mean=mean,
    )


def project(basis, field):
    """Temporal coefficients of one field (or a matrix of fields, one per column)."""
    f = np.asarray(field, dtype=np.float64)
    if f.shape[0] != basis.n_nodes:
        raise ShapeError(f"field has {f.shape[0]} nodes, basis has {basis.n_nodes}")
    if basis.mean is not None:
        f = f - (basis.mean if f.ndim == 1 else basis.mean[:, None])
    return basis.modes.T @ f


def reconstruct(basis, coefficients):
    """Field(s) ``modes @ coefficients``; accepts a vector or an (N, T) matrix."""
    a = np.asarray(coefficients, dtype=np.float64)
    if a.shape[0] != basis.n_kept:
        raise ShapeError(f"expected {basis.n_kept} coefficients, got {a.shape[0]}")
    out = basis.modes @ a
    if basis.mean is not None:
        out = out + (basis.mean if a.ndim == 1 else basis.mean[:, None])
    return out


def cumulative_energy_curve(basis_or_values):
    """Cumulative energy fraction per mode count over the full spectrum."""
    sv = getattr(basis_or_values, "singular_values", basis_or_values)
    cum = energy_fractions(sv)
    cum[-1] = 1.0
    return cum


# -- serialization -----------------------------------------------------------


def _fmt(x):
    return repr(float(x))


def snapshots_to_csv(snap):
    """Node id, optional x/y, then one column per snapshot time."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    head = ["node"]
    if snap.node_coords is not None:
        head += ["x", "y"]
    w.writerow(head + [_fmt(t) for t in snap.times])
    for i in range(snap.n_nodes):
        row = [str(i)]
        if snap.node_coords is not None:
            row += [_fmt(v) for v in snap.node_coords[i]]
        w.writerow(row + [_fmt(v) for v in snap.values[i]])
    return buf.getvalue()


def snapshots_from_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0][0] != "node":
        raise ShapeError("snapshot CSV must start with a 'node' column")
    head = rows[0]
    has_xy = len(head) >= 3 and head[1:3] == ["x", "y"]
    first = 3 if has_xy else 1
    times = np.array([float(t) for t in head[first:]])
    body = np.array([[float(v) for v in r] for r in rows[1:]])
    if body.ndim != 2 or body.shape[1] != len(head):
        raise ShapeError("ragged snapshot CSV")
    coords = body[:, 1:3] if has_xy else None
    return SnapshotMatrix(values=body[:, first:], times=times, node_coords=coords)


def matrix_to_csv(mat, header=None):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header is not None:
        w.writerow(header)
    for row in np.atleast_2d(mat):
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def matrix_from_csv(text, header=False):
    rows = list(csv.reader(io.StringIO(text)))
    if header:
        rows = rows[1:]
    return np.array([[float(v) for v in r] for r in rows], dtype=np.float64)


def basis_texts(basis, stem="pod"):
    """File name to text for the three files that persist a basis."""
    names = [f"{stem}_basis.json", f"{stem}_modes.csv", f"{stem}_coefficients.csv"]
    header = {
        "n_kept": basis.n_kept,
        "energy_captured": basis.energy_captured,
        "singular_values": [float(v) for v in basis.singular_values],
        "mean": None if basis.mean is None else [float(v) for v in basis.mean],
        "modes_file": names[1],
        "coefficients_file": names[2],
    }
    return {
        names[0]: json.dumps(header, indent=2, sort_keys=True) + "\n",
        names[1]: matrix_to_csv(basis.modes),
        names[2]: matrix_to_csv(basis.temporal_coefficients),
    }


def save_basis(basis, directory, stem="pod"):
    """Write ``<stem>_basis.json`` plus modes/coefficients CSVs; return paths."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    paths = {}
    for key, (name, text) in zip(("header", "modes", "coefficients"), basis_texts(basis, stem).items()):
        paths[key] = d / name
        paths[key].write_text(text, encoding="utf-8")
    return paths


def load_basis(header_path):
    header_path = Path(header_path)
    header = json.loads(header_path.read_text(encoding="utf-8"))
    modes = matrix_from_csv((header_path.parent / header["modes_file"]).read_text(encoding="utf-8"))
    coeffs = matrix_from_csv((header_path.parent / header["coefficients_file"]).read_text(encoding="utf-8"))
    mean = header.get("mean")
    return PodBasis(
        modes=modes,
        singular_values=np.array(header["singular_values"], dtype=np.float64),
        n_kept=int(header["n_kept"]),
        energy_captured=float(header["energy_captured"]),
        temporal_coefficients=coeffs,
        mean=None if mean is None else np.array(mean, dtype=np.float64),
    )
