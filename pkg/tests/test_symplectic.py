import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import std_form
from sympspec.errors import OddDimension
from sympspec.numeric import sym_eig
from sympspec.symplectic import (
    J,
    is_orthosymplectic,
    is_symplectic,
    random_orthosymplectic,
    random_sp_columns,
    random_spd,
    random_symplectic,
    symplectic_inverse,
    unitary_to_orthosymplectic,
)

seeds = st.integers(0, 2**32 - 1)


@pytest.mark.parametrize("n", [1, 2, 5])
def test_form_identities(n):
    Jn = J(n)
    assert np.array_equal(Jn, std_form(n))
    assert np.array_equal(Jn.T, -Jn)
    assert np.array_equal(Jn @ Jn, -np.eye(2 * n))


def test_predicates():
    assert is_symplectic(np.eye(4)).verdict
    assert not is_symplectic(2 * np.eye(2)).verdict
    assert is_orthosymplectic(J(2)).verdict
    scaled = np.diag([2.0, 0.5])
    assert is_symplectic(scaled).verdict and not is_orthosymplectic(scaled).verdict
    with pytest.raises(OddDimension):
        is_symplectic(np.eye(3))


def test_rectangular_columns():
    M = np.eye(4)[:, [0, 2]]
    assert is_symplectic(M).verdict
    assert not is_symplectic(np.eye(4)[:, [0, 1]]).verdict


def test_orthosymplectic_n1_is_rotation():
    N = random_orthosymplectic(1, 5)
    assert np.isclose(N[0, 0], N[1, 1]) and np.isclose(N[0, 1], -N[1, 0])
    assert np.isclose(np.linalg.det(N), 1.0)


def test_orthosymplectic_seed_7():
    v = is_orthosymplectic(random_orthosymplectic(3, 7))
    assert v.verdict and v.symp_residual <= 1e-10 and v.orth_residual <= 1e-10


def test_generators_are_deterministic():
    assert np.array_equal(random_orthosymplectic(3, 2), random_orthosymplectic(3, 2))
    assert np.array_equal(random_symplectic(3, 2), random_symplectic(3, 2))
    assert np.array_equal(random_spd(6, 2), random_spd(6, 2))
    assert not np.array_equal(random_spd(6, 2), random_spd(6, 3))


def test_symplectic_examples():
    assert is_orthosymplectic(random_symplectic(3, 1, spread=1.0)).verdict
    M = random_symplectic(2, 3, spread=4.0)
    assert is_symplectic(M).residual <= 1e-9
    assert abs(np.linalg.det(M) - 1.0) <= 1e-9


def test_spd_examples():
    A = random_spd(6, 11)
    assert np.allclose(A, A.T)
    assert sym_eig(A)[0][0] > 0
    lam = sym_eig(random_spd(4, 5, cond_target=1.0))[0]
    assert lam[-1] / lam[0] <= 10.0


@given(st.integers(1, 6), seeds, st.floats(1.0, 100.0))
def test_spd_condition_bound(n, seed, cond):
    lam = np.linalg.eigvalsh(random_spd(2 * n, seed, cond))
    assert lam[0] > 0 and lam[-1] / lam[0] <= 10.0 * cond


@given(st.integers(1, 8), seeds)
def test_orthosymplectic_residuals(n, seed):
    N = random_orthosymplectic(n, seed)
    v = is_orthosymplectic(N)
    assert v.symp_residual <= 1e-10 * n and v.orth_residual <= 1e-10 * n


@given(st.integers(1, 6), seeds, seeds)
def test_group_closure(n, s1, s2):
    M1, M2 = random_symplectic(n, s1), random_symplectic(n, s2)
    assert is_symplectic(M1 @ M2).verdict
    Mi = symplectic_inverse(M1)
    assert is_symplectic(Mi).verdict
    assert np.allclose(Mi @ M1, np.eye(2 * n), atol=1e-9 * np.linalg.norm(M1) ** 2)


@given(st.integers(1, 6), st.integers(1, 6), seeds)
def test_column_relations(n, k, seed):
    k = min(k, n)
    M = random_sp_columns(n, k, seed)
    U, V = M[:, :k], M[:, k:]
    Jn = J(n)
    scale = 1e-9 * max(1.0, np.linalg.norm(M) ** 2)
    assert np.allclose(U.T @ Jn @ V, np.eye(k), atol=scale)
    assert np.allclose(U.T @ Jn @ U, 0, atol=scale)
    assert np.allclose(V.T @ Jn @ V, 0, atol=scale)


def test_unitary_embedding_is_multiplicative():
    rng = np.random.default_rng(0)
    U1, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    U2, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    lhs = unitary_to_orthosymplectic(U1 @ U2)
    rhs = unitary_to_orthosymplectic(U1) @ unitary_to_orthosymplectic(U2)
    assert np.allclose(lhs, rhs)
