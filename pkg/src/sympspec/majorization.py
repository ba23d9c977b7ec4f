"""Majorization, doubly (super)stochastic matrices and the symplectic Schur-Horn theorem.

Vectors follow the ascending convention: ``x`` is weakly supermajorized by
``y`` when every ascending prefix sum of ``x`` dominates that of ``y``, and
majorized when the totals also agree.
"""

from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import (
    LengthMismatch,
    NegativeEntry,
    NotMajorized,
    NotWeaklySupermajorized,
    OddDimension,
    ShapeMismatch,
    VerificationFailed,
)
from .numeric import _clusters, _planes, as_matrix, sym_eig
from .symplectic import J, is_orthosymplectic
from .williamson import _check_spd_shape, williamson

MAJORIZED = "majorized"
WEAKLY_SUPERMAJORIZED = "weakly_supermajorized"
NEITHER = "neither"


def _vectors(x, y):
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size == 0 or x.size != y.size:
        raise LengthMismatch(f"vectors must have equal positive length, got {x.size} and {y.size}")
    return x, y


def _vec_tol(x, y, tol):
    return tol.rel * max(1.0, np.abs(x).sum(), np.abs(y).sum())


@dataclass(frozen=True)
class MajorizationReport:
    relation: str
    prefix_slacks: np.ndarray
    total_gap: float
    tolerance: float

    @property
    def weakly(self):
        return self.relation in (MAJORIZED, WEAKLY_SUPERMAJORIZED)


def compare(x, y, tol: ToleranceConfig = DEFAULT_TOL):
    """Classify ``x`` against ``y`` by ascending prefix sums."""
    x, y = _vectors(x, y)
    slacks = np.cumsum(np.sort(x, kind="stable")) - np.cumsum(np.sort(y, kind="stable"))
    gap = float(slacks[-1])
    eps = _vec_tol(x, y, tol)
    if np.all(slacks >= -eps):
        relation = MAJORIZED if abs(gap) <= eps else WEAKLY_SUPERMAJORIZED
    else:
        relation = NEITHER
    return MajorizationReport(relation, slacks, gap, eps)


def _perm_matrix(order):
    P = np.zeros((order.size, order.size))
    P[np.arange(order.size), order] = 1.0
    return P


def ds_witness(x, y, tol: ToleranceConfig = DEFAULT_TOL):
    """Doubly stochastic ``E`` with ``x = E y`` when ``x`` is majorized by ``y``, else None.

    Built as a product of at most ``n - 1`` T-transforms acting on the
    descending arrangement of ``y`` (each step fixes one more coordinate).
    """
    x, y = _vectors(x, y)
    if compare(x, y, tol).relation != MAJORIZED:
        return None
    n = x.size
    eps = _vec_tol(x, y, tol)
    px = np.argsort(-x, kind="stable")
    py = np.argsort(-y, kind="stable")
    xs, z = x[px], y[py].copy()
    E0 = np.eye(n)
    for _ in range(n):
        diff = z - xs
        above = np.flatnonzero(diff > eps)
        if above.size == 0:
            break
        j = above[-1]
        below = np.flatnonzero(diff[j + 1 :] < -eps)
        if below.size == 0:
            break
        k = j + 1 + below[0]
        delta = min(z[j] - xs[j], xs[k] - z[k])
        lam = 1.0 - delta / (z[j] - z[k])
        T = np.eye(n)
        T[[j, k], [j, k]] = lam
        T[j, k] = T[k, j] = 1.0 - lam
        z = T @ z
        E0 = T @ E0
    # x = Px^T xs, ys = Py y
    return _perm_matrix(px).T @ E0 @ _perm_matrix(py)


def is_doubly_stochastic(E, tol: ToleranceConfig = DEFAULT_TOL):
    E = as_matrix(E, "E")
    if E.shape[0] != E.shape[1]:
        raise ShapeMismatch("E must be square")
    eps = tol.rel * max(1.0, E.shape[0])
    return bool(
        np.all(E >= -eps)
        and np.all(np.abs(E.sum(axis=0) - 1.0) <= eps)
        and np.all(np.abs(E.sum(axis=1) - 1.0) <= eps)
    )


@dataclass(frozen=True)
class SuperstochasticVerdict:
    verdict: bool
    flow_value: float
    witness: Optional[np.ndarray]
    cut: Optional[tuple] = None


def _max_flow(cap, source, sink, eps):
    """Edmonds-Karp on a dense capacity matrix; returns (value, flow, reachable set)."""
    m = cap.shape[0]
    flow = np.zeros_like(cap)
    value = 0.0
    while True:
        residual = cap - flow
        parent = np.full(m, -1)
        parent[source] = source
        queue = deque([source])
        while queue and parent[sink] < 0:
            a = queue.popleft()
            for b in np.flatnonzero((residual[a] > eps) & (parent < 0)):
                parent[b] = a
                queue.append(b)
        if parent[sink] < 0:
            return value, flow, np.flatnonzero(parent >= 0)
        path, b = [], sink
        while b != source:
            path.append((parent[b], b))
            b = parent[b]
        push = min(residual[a, b] for a, b in path)
        for a, b in path:
            flow[a, b] += push
            flow[b, a] -= push
        value += push


def is_doubly_superstochastic(F, tol: ToleranceConfig = DEFAULT_TOL):
    """Decide whether some doubly stochastic ``E`` satisfies ``E <= F + tol`` entrywise.

    Transportation feasibility as a max flow: unit supply at every row,
    unit demand at every column, arc capacities ``F_ij``. Feasible iff the
    flow saturates all ``n`` units; the flow matrix is then the witness,
    otherwise the source side of a minimum cut is returned.
    """
    F = as_matrix(F, "F")
    n = F.shape[0]
    if F.shape[1] != n:
        raise ShapeMismatch("F must be square")
    eps = tol.rel * max(1.0, n)
    if np.any(F < -eps):
        raise NegativeEntry("F has negative entries")
    # nodes: 0 source, 1..n rows, n+1..2n columns, 2n+1 sink
    m = 2 * n + 2
    cap = np.zeros((m, m))
    cap[0, 1 : n + 1] = 1.0
    cap[1 : n + 1, n + 1 : 2 * n + 1] = np.maximum(F, 0.0) + eps
    cap[n + 1 : 2 * n + 1, m - 1] = 1.0
    value, flow, reach = _max_flow(cap, 0, m - 1, 1e-15)
    ok = value >= n - eps
    E = flow[1 : n + 1, n + 1 : 2 * n + 1]
    if ok:
        return SuperstochasticVerdict(True, float(value), E)
    rows = tuple(int(r - 1) for r in reach if 1 <= r <= n)
    cols = tuple(int(c - n - 1) for c in reach if n + 1 <= c <= 2 * n)
    return SuperstochasticVerdict(False, float(value), None, (rows, cols))


# ------------------------------------------------------------ diagonal data


@dataclass(frozen=True)
class DiagonalVectors:
    dc: np.ndarray
    ds_spec: np.ndarray
    dsv: np.ndarray
    dwv: np.ndarray
    dhv: np.ndarray


def blocks(A):
    A = as_matrix(A, "A")
    if A.shape[0] != A.shape[1] or A.shape[0] % 2:
        raise OddDimension("need a square matrix of even dimension")
    n = A.shape[0] // 2
    return A[:n, :n], A[:n, n:], A[n:, :n], A[n:, n:]


def delta_c(A):
    A11, _, _, A22 = blocks(A)
    return 0.5 * (np.diag(A11) + np.diag(A22))


def diagonal_vectors(A, tol: ToleranceConfig = DEFAULT_TOL):
    """The four diagonal summaries of ``A`` together with its symplectic spectrum."""
    A = _check_spd_shape(A)
    A11, A12, _, A22 = blocks(A)
    a, b, c = np.diag(A11), np.diag(A22), np.diag(A12)
    return DiagonalVectors(
        dc=0.5 * (a + b),
        ds_spec=williamson(A, tol).d,
        dsv=np.sqrt(a * b),
        dwv=np.sqrt((a**2 + b**2) / 2.0),
        dhv=np.sqrt((a**2 + b**2 + 2.0 * c**2) / 2.0),
    )


def n_tilde(N):
    """``(P∘P + Q∘Q + R∘R + S∘S) / 2`` for the quadrant blocks of ``N``."""
    P, Q, R, S = blocks(N)
    return 0.5 * (P**2 + Q**2 + R**2 + S**2)


def schur_horn_weak_check(A, tol: ToleranceConfig = DEFAULT_TOL):
    """Compare ``Delta_c(A)`` with ``d_s(A)``; anything but "neither" is expected."""
    A = _check_spd_shape(A)
    return compare(delta_c(A), williamson(A, tol).d, tol)


@dataclass(frozen=True)
class SaturationWitness:
    """``A = N (D + D) N^T`` with ``N`` orthosymplectic."""

    N: np.ndarray
    d: np.ndarray
    reconstruction_residual: float
    commutator: float


def commutator_norm(A):
    A = as_matrix(A, "A")
    Jn = J(A.shape[0] // 2)
    return float(np.linalg.norm(Jn @ A - A @ Jn))


def orthosymplectic_williamson(A, tol: ToleranceConfig = DEFAULT_TOL):
    """Orthosymplectic Williamson basis of ``A`` when ``A`` commutes with ``J``, else None.

    A J-commuting ``A`` is the real image of a Hermitian ``n x n`` matrix;
    its eigenspaces are J-invariant and are split into planes
    ``(x, -Jx)``, which are the columns of the unitary image.
    """
    A = _check_spd_shape(A)
    n = A.shape[0] // 2
    comm = commutator_norm(A)
    normA = np.linalg.norm(A)
    if comm > tol.rel * normA:
        return None
    Jn = J(n)
    lam, V = sym_eig(A, tol)
    planes = []
    for run in _clusters(lam, tol.cluster * lam[-1]):
        for x, f, _ in _planes(Jn, np.eye(2 * n), V[:, run], tol):
            planes.append((x, f, float(x @ A @ x)))
    planes.sort(key=lambda pl: pl[2])
    N = np.column_stack([pl[0] for pl in planes] + [pl[1] for pl in planes])
    d = np.array([pl[2] for pl in planes])
    DD = np.concatenate([d, d])
    recon = float(np.linalg.norm((N * DD) @ N.T - A))
    if not is_orthosymplectic(N, tol).verdict or recon > tol.cluster * normA:
        return None
    return SaturationWitness(N, d, recon, comm)


# ----------------------------------------------------------- converse route


def water_fill(x, y, tol: ToleranceConfig = DEFAULT_TOL):
    """Cap the largest entries of ``x`` at a common level so the result is majorized by ``y``.

    Returns:
        tuple: ``(v, level)`` with ``v <= x`` entrywise and ``sum(v) == sum(y)``.
    """
    x, y = _vectors(x, y)
    rep = compare(x, y, tol)
    if not rep.weakly:
        raise NotWeaklySupermajorized("x is not weakly supermajorized by y")
    if rep.relation == MAJORIZED:
        return x.copy(), float(x.max())
    order = np.argsort(x, kind="stable")
    xs = x[order]
    n = xs.size
    target = y.sum()
    prefix = np.concatenate([[0.0], np.cumsum(xs)])
    # level L in [xs[k-1], xs[k]] with prefix[k] + (n - k) L = target
    for k in range(n, -1, -1):
        level = (target - prefix[k]) / (n - k) if k < n else np.inf
        lo = xs[k - 1] if k > 0 else -np.inf
        if k < n and lo <= level <= xs[k]:
            break
    vs = np.minimum(xs, level)
    v = np.empty(n)
    v[order] = vs
    return v, float(level)


def horn_symmetric(v, y, tol: ToleranceConfig = DEFAULT_TOL):
    """Orthogonal ``O`` with ``diag(O diag(y) O^T) = v`` for ``v`` majorized by ``y``.

    Each step rotates the smallest free diagonal entry against the first
    free entry not below the smallest unplaced target, fixing that target
    exactly; later rotations never touch fixed positions.
    """
    v, y = _vectors(v, y)
    if compare(v, y, tol).relation != MAJORIZED:
        raise NotMajorized("v is not majorized by y")
    n = v.size
    X = np.diag(y)
    O = np.eye(n)
    placed = np.empty(n, dtype=int)
    free = list(range(n))
    for q in np.argsort(v, kind="stable"):
        t = v[q]
        vals = X.diagonal()
        free.sort(key=lambda p: vals[p])
        a = free[0]
        cand = [p for p in free[1:] if vals[p] >= t]
        if cand and vals[a] < t:
            b = cand[0]
            ya, yb = vals[a], vals[b]
            s2 = min(max((t - ya) / (yb - ya), 0.0), 1.0)
            c, s = np.sqrt(1.0 - s2), np.sqrt(s2)
            G = np.eye(n)
            G[a, a], G[a, b], G[b, a], G[b, b] = c, s, -s, c
            X = G @ X @ G.T
            O = G @ O
        placed[a] = q
        free.remove(a)
    P = np.zeros((n, n))
    P[placed, np.arange(n)] = 1.0
    return P @ O


@dataclass(frozen=True)
class SchurHornConstruction:
    A: np.ndarray
    v: np.ndarray
    alpha: np.ndarray
    dc_residual: float
    ds_residual: float


def schur_horn_details(x, y, tol: ToleranceConfig = DEFAULT_TOL):
    """Build ``A`` with ``Delta_c(A) = x`` and ``d_s(A) = y`` for positive ``x`` weakly supermajorized by ``y``.

    ``v`` = water-filled ``x``; ``O`` realises ``v`` as the diagonal of
    ``O diag(y) O^T``; ``A' = (O + O)(diag(y) + diag(y))(O + O)^T``; finally
    ``A = M^T A' M`` with the symplectic scaling
    ``M = diag(sqrt(alpha)) + diag(1/sqrt(alpha))``, where
    ``(alpha + 1/alpha) / 2 = x / v``.
    """
    x, y = _vectors(x, y)
    if np.any(x <= 0) or np.any(y <= 0):
        raise NotWeaklySupermajorized("entries of x and y must be positive")
    if not compare(x, y, tol).weakly:
        raise NotWeaklySupermajorized("x is not weakly supermajorized by y")
    n = x.size
    v, _ = water_fill(x, y, tol)
    O = horn_symmetric(v, y, tol)
    Y = (O * y) @ O.T
    Z = np.zeros((n, n))
    Ap = np.block([[Y, Z], [Z, Y]])
    r = np.maximum(x / v, 1.0)
    alpha = r + np.sqrt(r**2 - 1.0)
    m = np.concatenate([np.sqrt(alpha), 1.0 / np.sqrt(alpha)])
    A = m[:, None] * Ap * m[None, :]
    A = 0.5 * (A + A.T)
    dc_res = float(np.max(np.abs(delta_c(A) - x)))
    ds_res = float(np.max(np.abs(williamson(A, tol).d - np.sort(y))))
    scale = max(1.0, np.abs(y).max(), np.abs(x).max())
    if dc_res > tol.cluster * scale or ds_res > tol.cluster * scale:
        raise VerificationFailed(f"post-check failed: dc residual {dc_res:.3e}, ds residual {ds_res:.3e}")
    return SchurHornConstruction(A, v, alpha, dc_res, ds_res)


def schur_horn_construct(x, y, tol: ToleranceConfig = DEFAULT_TOL):
    return schur_horn_details(x, y, tol).A
