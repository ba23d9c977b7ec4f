"""Symplectic Weyl and Lidskii inequalities: verdicts, equality tests and witnesses."""

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import IndexOutOfRange, NotInvariant, NotSymplectic, ShapeMismatch
from .numeric import as_matrix, nullspace, sym_eig
from .symplectic import J, is_symplectic
from .williamson import (
    EigenPair,
    SymplecticSubspace,
    _check_indices,
    _check_spd_shape,
    associated_eigenvalues,
    curve,
    eigenpairs,
    is_invariant,
    pair_residual,
    williamson,
)


def _pair_of(A, B):
    A = _check_spd_shape(A)
    B = _check_spd_shape(B)
    if A.shape != B.shape:
        raise ShapeMismatch(f"A is {A.shape} but B is {B.shape}")
    return A, B


def _matches(a, b, tol):
    """Eigenvalue agreement rule: ``|a - b| <= tol.cluster * max(1, |b|)``."""
    return abs(a - b) <= tol.cluster * max(1.0, abs(b))


# --------------------------------------------------------------------- Weyl


@dataclass(frozen=True)
class WeylReport:
    i: int
    j: int
    lhs: float
    rhs: float
    slack: float
    holds: bool
    witness: Optional[EigenPair] = None
    witness_residuals: Optional[tuple] = None


def _weyl_indices(i, j, n):
    if i < 1 or j < 1 or i + j - 1 > n:
        raise IndexOutOfRange(f"need 1 <= i, j and i + j - 1 <= {n}, got i={i}, j={j}")


def _weyl_report(dA, dB, dAB, i, j, tol):
    lhs = float(dAB[i + j - 2])
    rhs = float(dA[i - 1] + dB[j - 1])
    slack = lhs - rhs
    return WeylReport(i, j, lhs, rhs, slack, bool(slack >= -tol.rel * (lhs + rhs)))


def weyl_check(A, B, i, j, tol: ToleranceConfig = DEFAULT_TOL):
    """Evaluate ``d_{i+j-1}(A+B) >= d_i(A) + d_j(B)`` (indices 1-based)."""
    A, B = _pair_of(A, B)
    _weyl_indices(i, j, A.shape[0] // 2)
    dA, dB, dAB = (williamson(X, tol).d for X in (A, B, A + B))
    return _weyl_report(dA, dB, dAB, i, j, tol)


def weyl_sweep(A, B, tol: ToleranceConfig = DEFAULT_TOL):
    """Reports for every admissible ``(i, j)``, sharing one decomposition per matrix."""
    A, B = _pair_of(A, B)
    n = A.shape[0] // 2
    dA, dB, dAB = (williamson(X, tol).d for X in (A, B, A + B))
    return [_weyl_report(dA, dB, dAB, i, j, tol) for i in range(1, n + 1) for j in range(1, n + 2 - i)]


def complex_eigenspace(X, d, tol: ToleranceConfig = DEFAULT_TOL):
    """Real form of ``ker(J X - i d I)``.

    ``w = u + iv`` lies in the kernel iff ``JXu + dv = 0`` and ``JXv - du = 0``;
    the returned columns are ``[u; v]`` stacked vectors spanning the kernel.
    """
    X = as_matrix(X, "X")
    m = X.shape[0]
    JX = J(m // 2) @ X
    I = np.eye(m)
    system = np.block([[JX, d * I], [-d * I, JX]])
    return nullspace(system, tol)


def _intersect(bases, tol):
    dim = bases[0].shape[0]
    comps = [np.eye(dim) - Z @ Z.T for Z in bases]
    return nullspace(np.vstack(comps), tol)


def weyl_equality_witness(A, B, i, j, tol: ToleranceConfig = DEFAULT_TOL):
    """Common normalized symplectic eigenvector pair of ``A``, ``B``, ``A + B``, if one exists.

    The pair must belong to ``d_i(A)``, ``d_j(B)`` and ``d_{i+j-1}(A+B)``.
    The three complex eigenspaces of ``JX`` are intersected in real form and
    the intersection is searched for a vector of positive symplectic norm
    ``<u, J v>``. The returned pair carries ``d = d_{i+j-1}(A+B)``.
    """
    A, B = _pair_of(A, B)
    n = A.shape[0] // 2
    _weyl_indices(i, j, n)
    targets = [
        (A, williamson(A, tol).d[i - 1]),
        (B, williamson(B, tol).d[j - 1]),
        (A + B, williamson(A + B, tol).d[i + j - 2]),
    ]
    spaces = [complex_eigenspace(X, d, tol) for X, d in targets]
    if any(Z.shape[1] == 0 for Z in spaces):
        return None
    Z = _intersect(spaces, tol)
    if Z.shape[1] == 0:
        return None
    Jn = J(n)
    G = np.zeros((4 * n, 4 * n))
    G[: 2 * n, 2 * n :] = 0.5 * Jn
    G[2 * n :, : 2 * n] = 0.5 * Jn.T
    q, C = sym_eig(Z.T @ G @ Z, tol)
    if q[-1] <= tol.rank_cut:
        return None
    w = Z @ C[:, -1]
    u, v = w[: 2 * n], w[2 * n :]
    s = np.sqrt(u @ Jn @ v)
    pair = EigenPair(u / s, v / s, float(targets[2][1]))
    for X, d in targets:
        p = replace(pair, d=float(d))
        if pair_residual(X, p) > tol.cluster * np.linalg.norm(X, 2) * (np.linalg.norm(p.u) + np.linalg.norm(p.v)):
            return None
    return pair


def weyl_witness_residuals(A, B, i, j, pair, tol: ToleranceConfig = DEFAULT_TOL):
    """Pair residuals of ``pair`` against ``A``, ``B``, ``A + B`` at their target eigenvalues."""
    ds = (williamson(A, tol).d[i - 1], williamson(B, tol).d[j - 1], williamson(A + B, tol).d[i + j - 2])
    return tuple(pair_residual(X, replace(pair, d=float(d))) for X, d in zip((A, B, A + B), ds))


# ------------------------------------------------------------------ Lidskii


@dataclass(frozen=True)
class LidskiiReport:
    indices: tuple
    lhs: float
    rhs: float
    slack: float
    holds: bool
    equality: Optional[bool] = None
    endpoint_equality: Optional[bool] = None
    linearity_residual: Optional[float] = None
    consistent: Optional[bool] = None
    grid: Optional[np.ndarray] = None
    phi: Optional[np.ndarray] = None
    trace_residuals: Optional[dict] = None
    degenerate_points: list = field(default_factory=list)


def lidskii_check(A, B, indices, tol: ToleranceConfig = DEFAULT_TOL):
    """Evaluate ``sum d_{i_j}(A+B) >= sum d_{i_j}(A) + sum_{j<=k} d_j(B)``."""
    A, B = _pair_of(A, B)
    idx = _check_indices(indices, A.shape[0] // 2)
    sel = np.array(idx) - 1
    dA, dB, dAB = (williamson(X, tol).d for X in (A, B, A + B))
    lhs = float(dAB[sel].sum())
    rhs = float(dA[sel].sum() + dB[: len(idx)].sum())
    slack = lhs - rhs
    return LidskiiReport(idx, lhs, rhs, slack, bool(slack >= -tol.rel * max(1.0, lhs + rhs)))


def lidskii_equality_test(A, B, indices, grid_size=21, tol: ToleranceConfig = DEFAULT_TOL):
    """Endpoint equality and linearity of ``phi(t) = sum d_{i_j}(A + tB)`` on a uniform grid.

    The two tests are equivalent in exact arithmetic; ``consistent`` is
    False when their verdicts disagree.
    """
    if grid_size < 3:
        raise ShapeMismatch("grid_size must be at least 3")
    A, B = _pair_of(A, B)
    idx = _check_indices(indices, A.shape[0] // 2)
    grid = np.linspace(0.0, 1.0, grid_size)
    table = curve(A, B, idx, grid, tol)
    phi = table.sums
    dB = williamson(B, tol).d
    lhs, phi0 = float(phi[-1]), float(phi[0])
    rhs = phi0 + float(dB[: len(idx)].sum())
    slack = lhs - rhs
    lin = float(np.max(np.abs(phi - phi0 - grid * (lhs - phi0))))
    eq_tol = tol.rel * max(1.0, lhs)
    endpoint = slack <= eq_tol
    linear = lin <= eq_tol
    return LidskiiReport(
        idx,
        lhs,
        rhs,
        slack,
        bool(slack >= -eq_tol),
        equality=bool(endpoint and linear),
        endpoint_equality=bool(endpoint),
        linearity_residual=lin,
        consistent=bool(endpoint == linear),
        grid=grid,
        phi=phi,
    )


@dataclass(frozen=True)
class TraceConditions:
    t: float
    trA: float
    trB: float
    residual_A: float
    residual_B: float
    degenerate: bool


def lidskii_trace_conditions(A, B, indices, t, tol: ToleranceConfig = DEFAULT_TOL):
    """Trace identities at ``t`` for ``M(t)`` built from the selected eigenbasis columns of ``A + tB``.

    ``residual_A = Tr[M^T A M]/2 - sum d_{i_j}(A)`` and
    ``residual_B = Tr[M^T B M]/2 - sum_{j<=k} d_j(B)``. When a selected
    eigenvalue of ``A + tB`` is clustered with an unselected one the chosen
    ``M(t)`` is one of many and ``degenerate`` is set; a large residual is
    then not a refutation.
    """
    if not 0.0 < t < 1.0:
        raise ShapeMismatch("t must lie in (0, 1)")
    A, B = _pair_of(A, B)
    n = A.shape[0] // 2
    idx = _check_indices(indices, n)
    sel = np.array(idx) - 1
    spectrum = williamson(A + t * B, tol)
    M = spectrum.M[:, np.concatenate([sel, sel + n])]
    trA = float(np.trace(M.T @ A @ M))
    trB = float(np.trace(M.T @ B @ M))
    dA = williamson(A, tol).d
    dB = williamson(B, tol).d
    others = np.setdiff1d(np.arange(n), sel)
    scale = tol.cluster * max(1.0, spectrum.d[-1])
    degenerate = bool(
        others.size and np.min(np.abs(spectrum.d[sel][:, None] - spectrum.d[others][None, :])) <= scale
    )
    return TraceConditions(
        t=float(t),
        trA=trA,
        trB=trB,
        residual_A=0.5 * trA - float(dA[sel].sum()),
        residual_B=0.5 * trB - float(dB[: len(idx)].sum()),
        degenerate=degenerate,
    )


def lidskii_report(A, B, indices, grid_size=21, trace_at=None, tol: ToleranceConfig = DEFAULT_TOL):
    """Equality test plus optional trace conditions, as one report."""
    rep = lidskii_equality_test(A, B, indices, grid_size, tol)
    if trace_at is None:
        return rep
    tc = lidskii_trace_conditions(A, B, indices, trace_at, tol)
    return replace(
        rep,
        trace_residuals={tc.t: (tc.residual_A, tc.residual_B)},
        degenerate_points=[tc.t] if tc.degenerate else [],
    )


def trace_extremal_gap(B, M, tol: ToleranceConfig = DEFAULT_TOL):
    """``Tr[M^T B M]/2 - sum_{i<=k} d_i(B)`` for ``M`` in Sp(2n, 2k); never negative in theory."""
    B = _check_spd_shape(B)
    M = as_matrix(M, "M")
    if M.shape[0] != B.shape[0]:
        raise ShapeMismatch("M and B sizes differ")
    verdict = is_symplectic(M, tol)
    if not verdict.verdict:
        raise NotSymplectic(f"M is not in Sp(2n, 2k) (residual {verdict.residual:.3e})")
    k = M.shape[1] // 2
    return float(0.5 * np.trace(M.T @ B @ M) - williamson(B, tol).d[:k].sum())


@dataclass(frozen=True)
class SubspaceConditions:
    inv_A: bool
    inv_B: bool
    basis_of_B_pairs: bool
    associated_match: bool
    residual_A: float
    residual_B: float


def verify_lidskii_subspace_conditions(
    A, B, indices, U: SymplecticSubspace, interval, grid_size=11, tol: ToleranceConfig = DEFAULT_TOL
):
    """Check a candidate subspace against the three necessary conditions for Lidskii equality.

    ``inv_A``/``inv_B``: ``U`` is invariant under ``JA`` and ``JB``.
    ``basis_of_B_pairs``: the eigenvalues of ``B`` associated with ``U`` are
    ``d_1(B)..d_k(B)``. ``associated_match``: on every grid point of
    ``interval`` the eigenvalues of ``A + tB`` associated with ``U`` are
    ``d_{i_1}(A+tB)..d_{i_k}(A+tB)``. Flags that cannot be evaluated
    because invariance fails are reported False.
    """
    A, B = _pair_of(A, B)
    n = A.shape[0] // 2
    idx = _check_indices(indices, n)
    if U.basis.shape != (2 * n, 2 * len(idx)):
        raise ShapeMismatch(f"subspace must have dimension {2 * len(idx)}")
    b, c = map(float, interval)
    if not 0.0 <= b < c <= 1.0:
        raise ShapeMismatch("interval must satisfy 0 <= b < c <= 1")
    Jn = J(n)
    ia = is_invariant(Jn @ A, U, tol)
    ib = is_invariant(Jn @ B, U, tol)
    basis_ok = False
    match = False
    if ib.verdict:
        try:
            gB = associated_eigenvalues(B, U, tol)
            dB = williamson(B, tol).d[: len(idx)]
            basis_ok = all(_matches(g, d, tol) for g, d in zip(gB, dB))
        except NotInvariant:
            basis_ok = False
    if ia.verdict and ib.verdict:
        sel = np.array(idx) - 1
        match = True
        for t in np.linspace(b, c, grid_size):
            C = A + t * B
            try:
                g = associated_eigenvalues(C, U, tol)
            except NotInvariant:
                match = False
                break
            d = williamson(C, tol).d[sel]
            if not all(_matches(x, y, tol) for x, y in zip(g, d)):
                match = False
                break
    return SubspaceConditions(ia.verdict, ib.verdict, basis_ok, match, ia.residual, ib.residual)


def eigenpair_subspace(A, indices, tol: ToleranceConfig = DEFAULT_TOL):
    """Subspace spanned by the eigenbasis pairs of ``A`` at 1-based ``indices``."""
    pairs = eigenpairs(williamson(A, tol))
    return SymplecticSubspace.from_pairs([pairs[i - 1] for i in indices])
