"""Dense real linear-algebra kernels.

Symmetric eigenproblems are solved by a cyclic Jacobi method with a fixed
round-robin pivot schedule, so results are bit-reproducible for a given
input. Each round applies n/2 disjoint rotations at once, which keeps the
pure-numpy implementation fast enough for matrices up to about 100x100.
"""

from functools import lru_cache

import numpy as np
import scipy.linalg

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import (
    IllConditioned,
    NoConvergence,
    NotPositiveDefinite,
    NotSkew,
    NotSymmetric,
    NumericalFailure,
    ShapeMismatch,
    SingularInput,
)

MAX_SWEEPS = 60
_EPS = np.finfo(float).eps


def as_matrix(M, name="matrix"):
    """Return ``M`` as a finite 2-D float array, raising ``ShapeMismatch`` otherwise."""
    arr = np.array(M, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ShapeMismatch(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ShapeMismatch(f"{name} has non-finite entries")
    return arr


def _square(M, name):
    arr = as_matrix(M, name)
    if arr.shape[0] != arr.shape[1]:
        raise ShapeMismatch(f"{name} must be square, got shape {arr.shape}")
    return arr


@lru_cache(maxsize=None)
def _round_robin(n):
    """Pivot schedule: a list of (p, q) index arrays, each a set of disjoint pairs.

    Circle method: player 0 stays fixed, the rest rotate. Odd sizes get a
    dummy player whose pairs are dropped.
    """
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        half = m // 2
        top, bottom = players[:half], players[half:][::-1]
        pairs = [(min(a, b), max(a, b)) for a, b in zip(top, bottom) if a < n and b < n]
        p = np.array([a for a, _ in pairs], dtype=int)
        q = np.array([b for _, b in pairs], dtype=int)
        rounds.append((p, q))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _fix_signs(V):
    """Make the first non-negligible entry of every column positive."""
    scale = np.max(np.abs(V), axis=0)
    for j in range(V.shape[1]):
        idx = np.flatnonzero(np.abs(V[:, j]) > 1e-10 * scale[j])
        if idx.size and V[idx[0], j] < 0:
            V[:, j] = -V[:, j]
    return V


def _jacobi(S):
    n = S.shape[0]
    A = S.copy()
    V = np.eye(n)
    if n == 1:
        return A.diagonal().copy(), V
    fro = np.linalg.norm(A)
    if fro == 0.0:
        return np.zeros(n), V
    rounds = _round_robin(n)
    eye = np.eye(n)
    for _ in range(MAX_SWEEPS):
        off = np.linalg.norm(A - np.diag(A.diagonal()))
        if off <= _EPS * fro:
            break
        for p, q in rounds:
            apq = A[p, q]
            active = np.abs(apq) > 1e-300
            if not np.any(active):
                continue
            p, q, apq = p[active], q[active], apq[active]
            app, aqq = A[p, p], A[q, q]
            tau = (aqq - app) / (2.0 * apq)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            c = 1.0 / np.hypot(1.0, t)
            s = t * c
            R = eye.copy()
            R[p, p] = c
            R[q, q] = c
            R[p, q] = s
            R[q, p] = -s
            A = R.T @ A @ R
            V = V @ R
        A = 0.5 * (A + A.T)
    else:
        off = np.linalg.norm(A - np.diag(A.diagonal()))
        if off > 1e3 * _EPS * fro:
            raise NoConvergence(f"Jacobi did not converge in {MAX_SWEEPS} sweeps (off-norm {off:.3e})")
    return A.diagonal().copy(), V


def sym_eig(S, tol: ToleranceConfig = DEFAULT_TOL):
    """Eigendecomposition of a real symmetric matrix.

    Returns:
        tuple: ``(lam, V)`` with ``lam`` ascending and ``V`` orthogonal such
        that ``S @ V == V @ diag(lam)``.

    Raises:
        NotSymmetric: if ``||S - S^T||_F > tol.rel * ||S||_F``.
        NoConvergence: if the sweep cap is exceeded.
    """
    S = _square(S, "S")
    norm = np.linalg.norm(S)
    if np.linalg.norm(S - S.T) > tol.rel * norm:
        raise NotSymmetric("matrix is not symmetric")
    lam, V = _jacobi(0.5 * (S + S.T))
    order = np.argsort(lam, kind="stable")
    return lam[order], _fix_signs(V[:, order])


def _spd_eig(A, tol):
    A = _square(A, "A")
    lam, V = sym_eig(A, tol)
    if lam[0] <= tol.abs:
        raise NotPositiveDefinite(f"smallest eigenvalue {lam[0]:.3e} is not positive")
    if lam[-1] / lam[0] > tol.cond_max:
        raise IllConditioned(f"condition number {lam[-1] / lam[0]:.3e} exceeds {tol.cond_max:.1e}")
    return lam, V


def spd_sqrt(A, tol: ToleranceConfig = DEFAULT_TOL):
    """Symmetric positive definite square root of ``A``."""
    lam, V = _spd_eig(A, tol)
    R = (V * np.sqrt(lam)) @ V.T
    return 0.5 * (R + R.T)


def spd_sqrt_pair(A, tol: ToleranceConfig = DEFAULT_TOL):
    """Return ``(A^{1/2}, A^{-1/2})`` from a single eigendecomposition."""
    lam, V = _spd_eig(A, tol)
    R = (V * np.sqrt(lam)) @ V.T
    Ri = (V / np.sqrt(lam)) @ V.T
    return 0.5 * (R + R.T), 0.5 * (Ri + Ri.T)


def nullspace(M, tol: ToleranceConfig = DEFAULT_TOL):
    """Orthonormal basis (as columns) of the numerical nullspace of ``M``.

    Singular values at or below ``tol.rank_cut * sigma_max`` count as zero.
    The result may have zero columns.
    """
    M = as_matrix(M, "M")
    _, sv, Vh = np.linalg.svd(M, full_matrices=True)
    smax = sv[0] if sv.size else 0.0
    rank = int(np.sum(sv > tol.rank_cut * smax)) if smax > 0 else 0
    return Vh[rank:].T.copy()


def orth(M, tol: ToleranceConfig = DEFAULT_TOL):
    """Orthonormal basis of the range of ``M`` at cutoff ``tol.rank_cut``."""
    M = as_matrix(M, "M")
    U, sv, _ = np.linalg.svd(M, full_matrices=False)
    smax = sv[0] if sv.size else 0.0
    rank = int(np.sum(sv > tol.rank_cut * smax)) if smax > 0 else 0
    return U[:, :rank].copy()


def _clusters(values, threshold):
    """Split ascending ``values`` into runs of consecutive gaps <= threshold, each run even-sized."""
    runs, start = [], 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > threshold:
            runs.append(list(range(start, i)))
            start = i
    merged = []
    for run in runs:
        if merged and len(merged[-1]) % 2:
            merged[-1].extend(run)
        else:
            merged.append(run)
    if merged and len(merged[-1]) % 2:
        if len(merged) == 1:
            raise NumericalFailure("cannot pair an odd number of invariant directions")
        last = merged.pop()
        merged[-1].extend(last)
    return merged


def _planes(K, S, W, tol):
    """Split the K-invariant span of ``W`` into 2-planes ``(x, f, d)`` with ``x^T K f = d > 0``.

    ``S`` is ``K^T K``. Each step picks the dominant direction of ``S`` in
    the remaining subspace (the first basis column when ``S`` is a multiple
    of the identity there), pairs it with ``-K x / |Kx|`` and deflates with
    a pivoted QR so coordinate-aligned inputs stay aligned.
    """
    planes = []
    while W.shape[1] >= 2:
        m = W.shape[1]
        x = W[:, 0]
        if m > 2:
            T = W.T @ S @ W
            T = 0.5 * (T + T.T)
            if np.linalg.norm(T - np.trace(T) / m * np.eye(m)) > 1e3 * _EPS * np.linalg.norm(T):
                _, Z = sym_eig(T, tol)
                x = W @ Z[:, -1]
        x = x / np.linalg.norm(x)
        f = -K @ x
        f = f - (x @ f) * x
        f = f / np.linalg.norm(f)
        planes.append((x, f, float(x @ K @ f)))
        if m == 2:
            break
        Z = W - np.outer(x, x @ W) - np.outer(f, f @ W)
        Q, R, piv = scipy.linalg.qr(Z, mode="economic", pivoting=True)
        Q = Q[:, : m - 2] * np.where(np.diag(R)[: m - 2] < 0, -1.0, 1.0)
        W = Q[:, np.argsort(piv[: m - 2], kind="stable")]
    return planes


def skew_canonical(K, tol: ToleranceConfig = DEFAULT_TOL):
    """Real canonical form of a nonsingular skew-symmetric matrix.

    Returns:
        tuple: ``(O, d)`` with ``O`` orthogonal and ``d`` ascending positive
        such that ``O^T K O`` is block diagonal with 2x2 blocks
        ``[[0, d_i], [-d_i, 0]]`` in interleaved order.

    Raises:
        NotSkew: if ``||K + K^T||_F > tol.rel * ||K||_F``.
        SingularInput: if some ``d_i <= tol.abs``.
    """
    K = _square(K, "K")
    m = K.shape[0]
    if m % 2:
        raise ShapeMismatch("skew-symmetric input must have even dimension")
    norm = np.linalg.norm(K)
    if np.linalg.norm(K + K.T) > tol.rel * norm:
        raise NotSkew("matrix is not skew-symmetric")
    K = 0.5 * (K - K.T)
    S = K.T @ K
    lam, V = sym_eig(0.5 * (S + S.T), tol)
    if np.sqrt(max(lam[0], 0.0)) <= tol.abs:
        raise SingularInput("skew-symmetric input is singular")
    planes = []
    for run in _clusters(lam, 2.0 * tol.cluster * lam[-1]):
        planes.extend(_planes(K, S, V[:, run], tol))
    planes.sort(key=lambda pl: pl[2])
    O = np.empty((m, m))
    O[:, 0::2] = np.column_stack([pl[0] for pl in planes])
    O[:, 1::2] = np.column_stack([pl[1] for pl in planes])
    d = np.array([pl[2] for pl in planes])
    if d[0] <= tol.abs:
        raise SingularInput("skew-symmetric input is singular")
    return O, d


def skew_block(d):
    """Interleaved block diagonal of ``[[0, d_i], [-d_i, 0]]``."""
    d = np.asarray(d, dtype=float)
    B = np.zeros((2 * d.size, 2 * d.size))
    idx = np.arange(d.size)
    B[2 * idx, 2 * idx + 1] = d
    B[2 * idx + 1, 2 * idx] = -d
    return B
