"""The standard symplectic form, group-membership predicates and seeded generators.

Convention: ``J_{2n} = [[0, I_n], [-I_n, 0]]`` and every basis matrix lists
its columns as ``(u_1..u_k, v_1..v_k)``.

Random streams use numpy's PCG64 (``numpy.random.PCG64``, the default
bit generator of numpy >= 1.17) seeded with the integer seed; draws are
taken in the order documented on each generator, so a seed fixes the
output across platforms.
"""

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import OddDimension
from .numeric import as_matrix

PRNG_NAME = "numpy.PCG64"
PRNG_VERSION = 1


def J(n):
    """The ``2n x 2n`` standard symplectic form."""
    I = np.eye(n)
    Z = np.zeros((n, n))
    return np.block([[Z, I], [-I, Z]])


def _rng(seed):
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class SymplecticVerdict:
    verdict: bool
    residual: float


@dataclass(frozen=True)
class OrthosymplecticVerdict:
    verdict: bool
    symp_residual: float
    orth_residual: float


def symplectic_residual(M):
    """``||M^T J_{2n} M - J_{2k}||_F`` for a ``2n x 2k`` matrix."""
    M = as_matrix(M)
    rows, cols = M.shape
    if rows % 2 or cols % 2:
        raise OddDimension(f"symplectic test needs even dimensions, got {M.shape}")
    if cols > rows:
        raise OddDimension(f"need rows >= cols, got {M.shape}")
    return float(np.linalg.norm(M.T @ J(rows // 2) @ M - J(cols // 2)))


def is_symplectic(M, tol: ToleranceConfig = DEFAULT_TOL):
    """Membership in Sp(2n, 2k), with residual relative to ``max(1, ||M||_F^2)``."""
    M = as_matrix(M)
    res = symplectic_residual(M)
    bound = tol.rel * max(1.0, np.linalg.norm(M) ** 2)
    return SymplecticVerdict(bool(res <= bound), res)


def is_orthosymplectic(M, tol: ToleranceConfig = DEFAULT_TOL):
    M = as_matrix(M)
    symp = is_symplectic(M, tol)
    k = M.shape[1]
    orth_res = float(np.linalg.norm(M.T @ M - np.eye(k)))
    ok = symp.verdict and orth_res <= tol.rel * max(1.0, np.sqrt(k))
    return OrthosymplecticVerdict(bool(ok), symp.residual, orth_res)


def symplectic_inverse(M):
    """Inverse of a square symplectic matrix, ``-J M^T J``."""
    M = as_matrix(M)
    Jn = J(M.shape[0] // 2)
    return -Jn @ M.T @ Jn


def unitary_to_orthosymplectic(U):
    """Real ``2n x 2n`` image ``[[X, -Y], [Y, X]]`` of ``U = X + iY``."""
    X, Y = U.real, U.imag
    return np.block([[X, -Y], [Y, X]])


def _haar_unitary(rng, n):
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    Q, R = np.linalg.qr(Z)
    phases = np.diag(R) / np.abs(np.diag(R))
    return Q * phases


def _haar_orthogonal(rng, n):
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


def random_orthosymplectic(n, seed):
    """Haar-random element of OrSp(2n).

    Draws: ``2 n^2`` standard normals (real parts, then imaginary parts).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    return unitary_to_orthosymplectic(_haar_unitary(_rng(seed), n))


def random_symplectic(n, seed, spread=4.0):
    """``O1 (diag(c) + diag(1/c)) O2`` with ``log c`` uniform on ``[-log spread, log spread]``.

    Draws in order: the unitary for ``O1``, ``n`` uniforms for ``c``, the unitary for ``O2``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if spread < 1:
        raise ValueError("spread must be >= 1")
    rng = _rng(seed)
    O1 = unitary_to_orthosymplectic(_haar_unitary(rng, n))
    c = np.exp(rng.uniform(-np.log(spread), np.log(spread), size=n))
    O2 = unitary_to_orthosymplectic(_haar_unitary(rng, n))
    return (O1 * np.concatenate([c, 1.0 / c])) @ O2


def random_spd(n2, seed, cond_target=10.0):
    """Random symmetric positive definite matrix ``Q diag(lam) Q^T``.

    ``lam`` spans ``[s, s * cond_target]`` log-uniformly (endpoints included
    when the size allows), with overall scale ``s`` log-uniform on
    ``[1/2, 2]``; ``Q`` is Haar orthogonal.
    Draws in order: 1 uniform for ``s``, ``n2`` uniforms for the spectrum, the ``n2^2`` normals for ``Q``.
    """
    if n2 < 2 or n2 % 2:
        raise OddDimension("random_spd needs an even dimension >= 2")
    if cond_target < 1:
        raise ValueError("cond_target must be >= 1")
    rng = _rng(seed)
    s = np.exp(rng.uniform(np.log(0.5), np.log(2.0)))
    u = rng.uniform(0.0, 1.0, size=n2)
    u[0], u[-1] = 0.0, 1.0
    lam = s * cond_target**u
    Q = _haar_orthogonal(rng, n2)
    A = (Q * lam) @ Q.T
    return 0.5 * (A + A.T)


def random_sp_columns(n, k, seed, spread=4.0):
    """A ``2n x 2k`` element of Sp(2n, 2k): pairs ``1..k`` of a random symplectic matrix."""
    M = random_symplectic(n, seed, spread)
    return M[:, np.r_[0:k, n : n + k]]
