import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import skew_spectrum, sym_spectrum
from sympspec.errors import NotPositiveDefinite, NotSkew, NotSymmetric, ShapeMismatch, SingularInput
from sympspec.numeric import nullspace, orth, skew_canonical, spd_sqrt, spd_sqrt_pair, sym_eig


def gaussian(seed, shape):
    return np.random.default_rng(seed).standard_normal(shape)


def test_sym_eig_diagonal_is_sorted():
    lam, V = sym_eig(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(lam, [1, 2, 3])
    assert np.allclose(np.abs(V), np.eye(3)[:, [1, 2, 0]])


def test_sym_eig_two_by_two():
    lam, V = sym_eig([[2.0, 1.0], [1.0, 2.0]])
    assert np.allclose(lam, [1, 3])
    # first nonzero entry of each eigenvector is positive
    assert V[0, 0] > 0 and V[0, 1] > 0


def test_sym_eig_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        sym_eig([[1.0, 2.0], [0.0, 1.0]])


def test_sym_eig_identity_keeps_basis():
    lam, V = sym_eig(np.eye(4))
    assert np.array_equal(V, np.eye(4))


def test_sym_eig_is_deterministic():
    G = gaussian(3, (12, 12))
    S = G + G.T
    a = sym_eig(S)
    b = sym_eig(S.copy())
    assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


@given(st.integers(1, 50), st.integers(0, 2**32 - 1))
def test_sym_eig_reconstruction(n, seed):
    G = gaussian(seed, (n, n))
    S = G + G.T
    lam, V = sym_eig(S)
    assert np.linalg.norm((V * lam) @ V.T - S) <= 1e-8 * max(1.0, np.linalg.norm(S))
    assert np.linalg.norm(V.T @ V - np.eye(n)) <= 1e-10 * n
    assert np.allclose(lam, sym_spectrum(S), atol=1e-9 * max(1.0, np.linalg.norm(S)))


@given(st.integers(1, 20), st.integers(0, 2**32 - 1))
def test_spd_sqrt_of_square(n, seed):
    G = gaussian(seed, (n, n))
    R = G @ G.T + n * np.eye(n)
    assert np.linalg.norm(spd_sqrt(R @ R) - R) <= 1e-8 * max(1.0, np.linalg.norm(R))


def test_spd_sqrt_examples():
    assert np.allclose(spd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))
    R, Ri = spd_sqrt_pair(np.diag([4.0, 9.0]))
    assert np.allclose(R @ Ri, np.eye(2))
    with pytest.raises(NotPositiveDefinite):
        spd_sqrt(np.diag([1.0, -1.0]))


def test_skew_canonical_unit_block():
    O, d = skew_canonical([[0.0, 1.0], [-1.0, 0.0]])
    assert np.allclose(O, np.eye(2)) and np.allclose(d, [1.0])


def test_skew_canonical_scaling():
    _, d = skew_canonical([[0.0, 5.0], [-5.0, 0.0]])
    assert np.allclose(d, [5.0])


def test_skew_canonical_errors():
    with pytest.raises(NotSkew):
        skew_canonical(np.eye(2))
    with pytest.raises(SingularInput):
        skew_canonical(np.zeros((2, 2)))
    with pytest.raises(ShapeMismatch):
        skew_canonical(np.zeros((3, 3)))


@given(st.integers(1, 12), st.integers(0, 2**32 - 1))
def test_skew_canonical_against_complex_eigensolver(n, seed):
    G = gaussian(seed, (2 * n, 2 * n))
    K = G - G.T
    O, d = skew_canonical(K)
    assert np.all(np.diff(d) >= 0)
    assert np.allclose(d, skew_spectrum(K), atol=1e-8 * np.linalg.norm(K))
    assert np.linalg.norm(O.T @ O - np.eye(2 * n)) <= 1e-10 * n
    blocks = np.zeros_like(K)
    for i, di in enumerate(d):
        blocks[2 * i, 2 * i + 1], blocks[2 * i + 1, 2 * i] = di, -di
    assert np.linalg.norm(O.T @ K @ O - blocks) <= 1e-9 * np.linalg.norm(K)


def test_skew_canonical_repeated_values():
    Jn = np.block([[np.zeros((3, 3)), np.eye(3)], [-np.eye(3), np.zeros((3, 3))]])
    Q, _ = np.linalg.qr(gaussian(1, (6, 6)))
    O, d = skew_canonical(Q @ (2.0 * Jn) @ Q.T)
    assert np.allclose(d, 2.0)
    assert np.linalg.norm(O.T @ O - np.eye(6)) < 1e-12


def test_nullspace_examples():
    assert nullspace(np.eye(2)).shape == (2, 0)
    b = nullspace(np.ones((2, 2)))
    assert b.shape == (2, 1)
    assert np.allclose(np.abs(b[:, 0]), [1 / np.sqrt(2)] * 2)
    assert nullspace(np.zeros((3, 3))).shape == (3, 3)


@given(st.integers(1, 8), st.integers(0, 8), st.integers(0, 2**32 - 1))
def test_nullspace_property(m, r, seed):
    r = min(r, m)
    M = gaussian(seed, (m, r)) @ gaussian(seed + 1, (r, m)) if r else np.zeros((m, m))
    N = nullspace(M)
    assert N.shape[1] == m - r
    assert np.allclose(N.T @ N, np.eye(N.shape[1]))
    smax = np.linalg.norm(M, 2)
    assert np.all(np.linalg.norm(M @ N, axis=0) <= 1e-8 * max(smax, 1e-300) + 1e-12)
    assert orth(M).shape[1] == r
