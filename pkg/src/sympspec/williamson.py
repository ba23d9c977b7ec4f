"""Williamson decomposition, symplectic eigenvector pairs and JA-invariant subspaces."""

from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import (
    IndexOutOfRange,
    MixedEigenvalues,
    NotInvariant,
    NumericalFailure,
    OddDimension,
    ShapeMismatch,
    ZeroCombination,
)
from .numeric import as_matrix, orth, skew_canonical, spd_sqrt_pair
from .symplectic import J, is_symplectic, symplectic_residual


@dataclass(frozen=True)
class SymplecticSpectrum:
    """Result of :func:`williamson`: ``M^T A M = diag(d) + diag(d)``."""

    d: np.ndarray
    M: np.ndarray
    diag_residual: float
    symp_residual: float

    @property
    def n(self):
        return self.d.size


@dataclass(frozen=True)
class EigenPair:
    """Symplectic eigenvector pair: ``A u = d J v`` and ``A v = -d J u``."""

    u: np.ndarray
    v: np.ndarray
    d: float

    @property
    def symplectic_norm(self):
        """``<u, J v>``; equals 1 for a normalized pair."""
        return float(self.u @ J(self.u.size // 2) @ self.v)


@dataclass(frozen=True)
class SymplecticSubspace:
    """Span of a ``2n x 2k`` basis in Sp(2n, 2k), columns ``(u_1..u_k, v_1..v_k)``."""

    basis: np.ndarray
    residual: float = field(init=False)

    def __post_init__(self):
        basis = as_matrix(self.basis, "basis")
        object.__setattr__(self, "basis", basis)
        verdict = is_symplectic(basis)
        if not verdict.verdict:
            raise ShapeMismatch(f"basis is not symplectic (residual {verdict.residual:.3e})")
        object.__setattr__(self, "residual", verdict.residual)

    @property
    def k(self):
        return self.basis.shape[1] // 2

    @classmethod
    def from_pairs(cls, pairs):
        us = [p.u for p in pairs]
        vs = [p.v for p in pairs]
        return cls(np.column_stack(us + vs))

    @classmethod
    def from_columns(cls, M, indices):
        """Subspace spanned by pairs ``indices`` (0-based) of a square symplectic ``M``."""
        n = M.shape[0] // 2
        idx = list(indices)
        return cls(M[:, idx + [n + i for i in idx]])


def _check_spd_shape(A):
    A = as_matrix(A, "A")
    if A.shape[0] != A.shape[1]:
        raise ShapeMismatch(f"A must be square, got {A.shape}")
    if A.shape[0] % 2:
        raise OddDimension("A must have even dimension")
    return A


def _grouped(O):
    """Reorder interleaved columns (x1, f1, x2, f2, ..) as (x1, x2, .., f1, f2, ..)."""
    return np.hstack([O[:, 0::2], O[:, 1::2]])


def williamson(A, tol: ToleranceConfig = DEFAULT_TOL):
    """Williamson normal form of a positive definite ``2n x 2n`` matrix.

    Route: ``K = A^{1/2} J A^{1/2}`` is skew; its canonical form ``O^T K O``
    gives ``d`` and ``M = A^{-1/2} O (diag(sqrt d) + diag(sqrt d))``.

    Raises:
        NotPositiveDefinite, IllConditioned, NoConvergence: from the kernels.
        NumericalFailure: if the diagonalisation residual is grossly off.
    """
    A = _check_spd_shape(A)
    n = A.shape[0] // 2
    R, Ri = spd_sqrt_pair(A, tol)
    K = R @ J(n) @ R
    O, d = skew_canonical(0.5 * (K - K.T), tol)
    root = np.sqrt(np.concatenate([d, d]))
    M = (Ri @ _grouped(O)) * root
    DD = np.diag(np.concatenate([d, d]))
    diag_res = float(np.linalg.norm(M.T @ A @ M - DD))
    if diag_res > tol.cluster * np.linalg.norm(A):
        raise NumericalFailure(f"Williamson residual {diag_res:.3e} too large")
    return SymplecticSpectrum(d=d, M=M, diag_residual=diag_res, symp_residual=symplectic_residual(M))


def symplectic_eigenvalues(A, tol: ToleranceConfig = DEFAULT_TOL):
    return williamson(A, tol).d


def eigenpairs(spectrum: SymplecticSpectrum):
    """Normalized pairs from columns ``i`` and ``n + i`` of the eigenbasis."""
    n = spectrum.n
    return [EigenPair(spectrum.M[:, i].copy(), spectrum.M[:, n + i].copy(), float(spectrum.d[i])) for i in range(n)]


def pair_residual(A, p: EigenPair):
    """``max(||A u - d J v||, ||A v + d J u||)``."""
    A = as_matrix(A, "A")
    if p.u.shape != (A.shape[0],) or p.v.shape != (A.shape[0],):
        raise ShapeMismatch("pair vectors do not match the matrix size")
    Jn = J(A.shape[0] // 2)
    r1 = np.linalg.norm(A @ p.u - p.d * (Jn @ p.v))
    r2 = np.linalg.norm(A @ p.v + p.d * (Jn @ p.u))
    return float(max(r1, r2))


def combine_pairs(pairs, alpha, beta, tol: ToleranceConfig = DEFAULT_TOL):
    """Combination ``u = sum(a u + b v)``, ``v = sum(-b u + a v)`` of pairs sharing one eigenvalue.

    The result is a (generally unnormalized) eigenvector pair for the shared
    eigenvalue; its symplectic norm is ``sum(a^2 + b^2)`` when the inputs are
    symplectically orthonormal.
    """
    pairs = list(pairs)
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if not pairs or alpha.shape != (len(pairs),) or beta.shape != (len(pairs),):
        raise ShapeMismatch("need one alpha and one beta per pair")
    d0 = pairs[0].d
    for p in pairs[1:]:
        if abs(p.d - d0) > tol.cluster * max(1.0, d0):
            raise MixedEigenvalues(f"pairs have eigenvalues {d0} and {p.d}")
    if not np.any(alpha) and not np.any(beta):
        raise ZeroCombination("all coefficients are zero")
    u = sum(a * p.u + b * p.v for p, a, b in zip(pairs, alpha, beta))
    v = sum(-b * p.u + a * p.v for p, a, b in zip(pairs, alpha, beta))
    return EigenPair(u, v, d0)


@dataclass(frozen=True)
class InvarianceVerdict:
    verdict: bool
    residual: float


def is_invariant(X, U: SymplecticSubspace, tol: ToleranceConfig = DEFAULT_TOL):
    """Whether ``X`` maps ``span(U)`` into itself: ``||(I - P) X Bas||_F`` small."""
    X = as_matrix(X, "X")
    Bas = U.basis
    if X.shape != (Bas.shape[0], Bas.shape[0]):
        raise ShapeMismatch("operator and subspace sizes differ")
    Q = orth(Bas, tol)
    XB = X @ Bas
    res = float(np.linalg.norm(XB - Q @ (Q.T @ XB)))
    bound = tol.rel * np.linalg.norm(X) * np.linalg.norm(Bas)
    return InvarianceVerdict(bool(res <= bound), res)


def subspace_eigenpairs(A, U: SymplecticSubspace, tol: ToleranceConfig = DEFAULT_TOL):
    """Eigenvector pairs of ``A`` forming a symplectic basis of a JA-invariant ``U``.

    ``A^{1/2} U`` is invariant under ``K = A^{1/2} J A^{1/2}`` (equivalently
    its complexification under the Hermitian ``iK``). The positive
    eigenvalues ``gamma`` of ``iK`` on that space come with eigenvectors
    ``A^{1/2}(x - i y)`` of unit norm, where ``<x, J y> = 1/(2 gamma)``;
    rescaling by ``sqrt(2 gamma)`` gives normalized pairs.

    Returns:
        list[EigenPair]: ordered by ascending ``gamma``.
    """
    A = _check_spd_shape(A)
    n = A.shape[0] // 2
    if U.basis.shape[0] != 2 * n:
        raise ShapeMismatch("subspace and matrix sizes differ")
    Jn = J(n)
    inv = is_invariant(Jn @ A, U, tol)
    if not inv.verdict:
        raise NotInvariant(f"subspace is not JA-invariant (residual {inv.residual:.3e})")
    R, Ri = spd_sqrt_pair(A, tol)
    K = R @ Jn @ R
    Q = orth(R @ U.basis, tol)
    if Q.shape[1] != U.basis.shape[1]:
        raise NumericalFailure("subspace basis lost rank under A^{1/2}")
    S = Q.T @ K @ Q
    O, gamma = skew_canonical(0.5 * (S - S.T), tol)
    pairs = []
    for i, g in enumerate(gamma):
        # unit complex eigenvector A^{1/2}(x - i y) of iK for eigenvalue g
        xr = Q @ O[:, 2 * i] / np.sqrt(2.0)
        yr = Q @ O[:, 2 * i + 1] / np.sqrt(2.0)
        x, y = Ri @ xr, Ri @ yr
        scale = np.sqrt(2.0 * g)
        pairs.append(EigenPair(scale * x, scale * y, float(g)))
    return pairs


def associated_eigenvalues(A, U: SymplecticSubspace, tol: ToleranceConfig = DEFAULT_TOL):
    return np.array([p.d for p in subspace_eigenpairs(A, U, tol)])


@dataclass(frozen=True)
class CurveTable:
    """Samples ``d_i(A + tB)`` for selected 1-based indices."""

    t: np.ndarray
    indices: tuple
    values: np.ndarray

    @property
    def sums(self):
        return self.values.sum(axis=1)

    def header(self):
        return ["t"] + [f"d_{i}" for i in self.indices] + ["sum"]

    def rows(self):
        for t, vals, s in zip(self.t, self.values, self.sums):
            yield [float(t), *map(float, vals), float(s)]


def _check_indices(indices, n):
    idx = tuple(int(i) for i in indices)
    if not idx or any(i < 1 or i > n for i in idx) or any(a >= b for a, b in zip(idx, idx[1:])):
        raise IndexOutOfRange(f"indices must be strictly ascending within 1..{n}, got {idx}")
    return idx


def curve(A, B, indices, grid, tol: ToleranceConfig = DEFAULT_TOL):
    """Symplectic eigenvalue curves ``t -> d_i(A + tB)`` on a sorted grid in ``[0, 1]``.

    Every grid point is an independent Williamson decomposition; no
    eigenvector continuity is tracked.
    """
    A = _check_spd_shape(A)
    B = _check_spd_shape(B)
    if A.shape != B.shape:
        raise ShapeMismatch("A and B differ in size")
    idx = _check_indices(indices, A.shape[0] // 2)
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or np.any(np.diff(grid) < 0) or grid[0] < 0 or grid[-1] > 1:
        raise ShapeMismatch("grid must be a sorted sequence in [0, 1]")
    sel = np.array(idx) - 1
    values = np.array([williamson(A + t * B, tol).d[sel] for t in grid])
    return CurveTable(t=grid, indices=idx, values=values)
