"""Dense real matrix helpers and a one-sided Jacobi SVD.

Matrices are plain 2-D ``float64`` numpy arrays (row-major). Shapes are
checked at each public entry point rather than by a wrapper type.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, ShapeError

__all__ = [
    "SvdResult",
    "as_matrix",
    "matmul",
    "svd",
    "frobenius_relative_error",
    "MAX_SWEEPS",
    "ROTATION_TOL",
]

MAX_SWEEPS = 60
ROTATION_TOL = 1e-12
RANK_TOL = 1e-12


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite 2-D float64 array or raise."""
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeError(f"{name} must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains non-finite entries")
    return arr


def matmul(a, b):
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    out = a @ b
    if not np.all(np.isfinite(out)):
        raise DomainError("matrix product overflowed")
    return out


def frobenius_relative_error(a, b):
    """Return ``||a - b||_F / ||a||_F``; ``a`` is the reference."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    peak = float(np.max(np.abs(a))) if a.size else 0.0
    if peak == 0.0:
        raise DomainError("reference matrix has zero Frobenius norm")
    # common scaling guards the squared sums against under/overflow
    return float(np.linalg.norm((a - b) / peak) / np.linalg.norm(a / peak))


@dataclass(frozen=True)
class SvdResult:
    """Thin SVD ``a = u @ diag(singular_values) @ vt`` with ``r = min(m, n)``."""

    u: np.ndarray
    singular_values: np.ndarray
    vt: np.ndarray

    @property
    def rank(self):
        return int(np.count_nonzero(self.singular_values))

    def reconstruct(self):
        return (self.u * self.singular_values) @ self.vt


def _round_robin(n):
    """Rounds of disjoint column pairs covering every pair once.

    Standard circle-method tournament; an odd count gets a dummy slot
    (index ``n``) whose pairings are dropped.
    """
    players = list(range(n + (n % 2)))
    m = len(players)
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        if pairs:
            rounds.append((np.array([p for p, _ in pairs]), np.array([q for _, q in pairs])))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def _jacobi_tall(a):
    """One-sided Jacobi on a matrix with rows >= cols.

    Returns (u, s, v) with columns of ``u`` orthonormal, ``s`` descending.
    """
    m, n = a.shape
    work = a.copy()
    v = np.eye(n)
    rounds = _round_robin(n)
    # columns below this squared norm are roundoff; rotating them never settles
    floor = (n * np.finfo(np.float64).eps * np.linalg.norm(a)) ** 2
    residual = 0.0
    for _ in range(MAX_SWEEPS):
        residual = 0.0
        for p, q in rounds:
            ap = work[:, p]
            aq = work[:, q]
            alpha = np.einsum("ij,ij->j", ap, ap)
            beta = np.einsum("ij,ij->j", aq, aq)
            gamma = np.einsum("ij,ij->j", ap, aq)
            scale = np.sqrt(alpha * beta)
            live = (scale > 0.0) & (np.minimum(alpha, beta) > floor)
            rel = np.zeros_like(gamma)
            rel[live] = np.abs(gamma[live]) / scale[live]
            if rel.size:
                residual = max(residual, float(rel.max()))
            rotate = rel > ROTATION_TOL
            if not np.any(rotate):
                continue
            p, q = p[rotate], q[rotate]
            ap, aq = ap[:, rotate], aq[:, rotate]
            alpha, beta, gamma = alpha[rotate], beta[rotate], gamma[rotate]
            zeta = (beta - alpha) / (2.0 * gamma)
            t = np.where(zeta >= 0.0, 1.0, -1.0) / (np.abs(zeta) + np.hypot(1.0, zeta))
            c = 1.0 / np.hypot(1.0, t)
            s = c * t
            work[:, p] = c * ap - s * aq
            work[:, q] = s * ap + c * aq
            vp = v[:, p]
            vq = v[:, q]
            v[:, p] = c * vp - s * vq
            v[:, q] = s * vp + c * vq
        if residual <= ROTATION_TOL:
            break
    else:
        raise ConvergenceError(f"Jacobi SVD did not converge in {MAX_SWEEPS} sweeps", residual)

    sigma = np.linalg.norm(work, axis=0)
    order = np.argsort(-sigma, kind="stable")
    sigma = sigma[order]
    work = work[:, order]
    v = v[:, order]

    smax = sigma[0] if sigma.size else 0.0
    keep = sigma > RANK_TOL * smax if smax > 0.0 else np.zeros(n, dtype=bool)
    sigma = np.where(keep, sigma, 0.0)
    u = np.zeros((m, n))
    u[:, keep] = work[:, keep] / sigma[keep]
    if not np.all(keep):
        u = _complete_basis(u, keep)
    return u, sigma, v


def _complete_basis(u, keep):
    """Fill columns of ``u`` not in ``keep`` with an orthonormal complement."""
    m = u.shape[0]
    basis = [u[:, j] for j in np.flatnonzero(keep)]
    filled = []
    for k in range(m):
        if len(filled) == int(np.count_nonzero(~keep)):
            break
        cand = np.zeros(m)
        cand[k] = 1.0
        for _ in range(2):
            for b in basis + filled:
                cand -= (b @ cand) * b
        norm = np.linalg.norm(cand)
        if norm > 0.5:
            filled.append(cand / norm)
    u = u.copy()
    for j, col in zip(np.flatnonzero(~keep), filled):
        u[:, j] = col
    return u


def svd(a):
    """Thin singular value decomposition by one-sided Jacobi rotations.

    Wide inputs are transposed so the rotations act on the shorter side;
    strictly tall inputs are first reduced by a QR factorization.
    Singular values below ``1e-12 * max`` are reported as exact zeros and
    their left vectors are completed to an orthonormal set.

    Raises
    ------
    DomainError
        If ``a`` has non-finite entries.
    ConvergenceError
        If the rotations have not settled after ``MAX_SWEEPS`` sweeps.
    """
    a = as_matrix(a)
    # unit max-abs scaling keeps squared norms away from under/overflow
    peak = float(np.max(np.abs(a))) if a.size else 0.0
    if peak > 0.0:
        a = a / peak
    wide = a.shape[1] > a.shape[0]
    tall = a.T if wide else a
    if tall.shape[0] > tall.shape[1]:
        # rotations then act on the small triangular factor
        q, r = np.linalg.qr(tall)
        ur, s, v = _jacobi_tall(r)
        u = q @ ur
    else:
        u, s, v = _jacobi_tall(tall)
    if wide:
        u, v = v, u
    if peak > 0.0:
        s = s * peak
    return SvdResult(u=u, singular_values=s, vt=np.ascontiguousarray(v.T))
