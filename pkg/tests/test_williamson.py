import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from constructions import from_basis, lidskii_equality_pair
from oracles import std_form, symplectic_spectrum
from sympspec.errors import (
    IllConditioned,
    MixedEigenvalues,
    NotInvariant,
    NotPositiveDefinite,
    ShapeMismatch,
    ZeroCombination,
)
from sympspec.symplectic import (
    is_orthosymplectic,
    is_symplectic,
    random_orthosymplectic,
    random_spd,
    random_symplectic,
)
from sympspec.williamson import (
    EigenPair,
    SymplecticSubspace,
    associated_eigenvalues,
    combine_pairs,
    curve,
    eigenpairs,
    is_invariant,
    pair_residual,
    subspace_eigenpairs,
    williamson,
)

seeds = st.integers(0, 2**32 - 1)


def test_identity():
    spectrum = williamson(np.eye(6))
    assert np.allclose(spectrum.d, 1.0)
    assert is_orthosymplectic(spectrum.M).verdict


def test_diag_2_8():
    spectrum = williamson(np.diag([2.0, 8.0]))
    assert np.isclose(spectrum.d[0], 4.0)
    assert np.allclose(spectrum.M, np.diag([np.sqrt(2.0), 1 / np.sqrt(2.0)]))
    assert np.allclose(symplectic_spectrum(np.diag([2.0, 8.0])), [4.0])


def test_congruence_example():
    S = random_symplectic(2, 9)
    A = S.T @ np.diag([1.0, 2.0, 1.0, 2.0]) @ S
    assert np.allclose(williamson(A).d, [1.0, 2.0], atol=1e-9)


def test_errors():
    with pytest.raises(NotPositiveDefinite):
        williamson(np.diag([1.0, -2.0]))
    with pytest.raises(IllConditioned):
        williamson(np.diag([1.0, 1e-13]) * 1e6)
    with pytest.raises(ShapeMismatch):
        williamson(np.ones((2, 3)))


@given(st.integers(1, 10), seeds, st.floats(1.0, 1e3))
def test_decomposition_invariants(n, seed, cond):
    A = random_spd(2 * n, seed, cond)
    spectrum = williamson(A)
    assert np.all(np.diff(spectrum.d) >= 0) and spectrum.d[0] > 0
    assert is_symplectic(spectrum.M).verdict
    assert spectrum.diag_residual <= 1e-9 * np.linalg.norm(A) * max(1.0, cond / 10)
    assert np.allclose(spectrum.d, symplectic_spectrum(A), atol=1e-8 * np.linalg.norm(A))


@given(st.integers(1, 6), seeds, seeds)
def test_congruence_invariance(n, s1, s2):
    A = random_spd(2 * n, s1)
    S = random_symplectic(n, s2, spread=2.0)
    assert np.allclose(williamson(S.T @ A @ S).d, williamson(A).d, rtol=1e-8)


@given(st.integers(1, 6), seeds, st.floats(0.01, 100.0))
def test_positive_scaling(n, seed, c):
    A = random_spd(2 * n, seed)
    assert np.allclose(williamson(c * A).d, c * williamson(A).d, rtol=1e-9)


@given(st.integers(1, 8), seeds)
def test_pairs_are_complex_eigenvectors(n, seed):
    A = random_spd(2 * n, seed)
    Jn = std_form(n)
    pairs = eigenpairs(williamson(A))
    for p in pairs:
        w = p.u + 1j * p.v
        assert np.linalg.norm(Jn @ A @ w - 1j * p.d * w) <= 1e-8 * np.linalg.norm(A) * np.linalg.norm(w)
        assert pair_residual(A, p) <= 1e-9 * np.linalg.norm(A, 2) * (np.linalg.norm(p.u) + np.linalg.norm(p.v))
        assert np.isclose(p.symplectic_norm, 1.0)
    cross = [pairs[a].u @ Jn @ pairs[b].v for a in range(n) for b in range(n) if a != b]
    assert np.allclose(cross, 0.0, atol=1e-10)


def test_eigenpairs_examples():
    (p,) = eigenpairs(williamson(np.eye(2)))
    assert np.allclose(p.u, [1, 0]) and np.allclose(p.v, [0, 1]) and p.d == 1.0
    A = np.diag([2.0, 8.0])
    (p,) = eigenpairs(williamson(A))
    assert pair_residual(A, p) <= 1e-10


def test_pair_residual_linear_in_perturbation():
    A = random_spd(4, 3)
    p = eigenpairs(williamson(A))[0]
    e1 = np.eye(4)[0]
    r = [pair_residual(A, EigenPair(p.u + eps * e1, p.v, p.d)) for eps in (1e-3, 2e-3)]
    assert np.isclose(r[1] / r[0], 2.0, rtol=1e-3)
    assert np.isclose(r[0] / 1e-3, np.linalg.norm(A @ e1), rtol=1e-6)
    with pytest.raises(ShapeMismatch):
        pair_residual(A, EigenPair(np.ones(2), np.ones(2), 1.0))


def test_combine_pairs():
    A = np.eye(4)
    pairs = eigenpairs(williamson(A))
    p = pairs[0]
    q = combine_pairs([p], [1.0], [0.0])
    assert np.array_equal(q.u, p.u) and np.array_equal(q.v, p.v)
    q = combine_pairs([p], [0.0], [1.0])
    assert np.allclose(q.u, p.v) and np.allclose(q.v, -p.u)
    rng = np.random.default_rng(0)
    a, b = rng.standard_normal(2), rng.standard_normal(2)
    q = combine_pairs(pairs, a, b)
    assert pair_residual(A, q) <= 1e-10
    assert np.isclose(q.symplectic_norm, np.sum(a**2 + b**2))
    with pytest.raises(ZeroCombination):
        combine_pairs(pairs, [0.0, 0.0], [0.0, 0.0])


def test_combine_rejects_mixed_eigenvalues():
    pairs = eigenpairs(williamson(np.diag([1.0, 2.0, 1.0, 2.0])))
    with pytest.raises(MixedEigenvalues):
        combine_pairs(pairs, [1.0, 1.0], [0.0, 0.0])


def test_is_invariant_examples():
    A = random_spd(4, 8)
    spectrum = williamson(A)
    U = SymplecticSubspace.from_pairs(eigenpairs(spectrum)[:1])
    assert is_invariant(np.eye(4), U).verdict
    assert is_invariant(std_form(2) @ A, U).verdict
    E = SymplecticSubspace(np.eye(4)[:, [0, 2]])
    assert not is_invariant(std_form(2) @ A, E).verdict


def test_subspace_rejects_nonsymplectic_basis():
    with pytest.raises(ShapeMismatch):
        SymplecticSubspace(np.eye(4)[:, [0, 1]])


def test_subspace_eigenpairs_examples():
    A = random_spd(6, 4)
    spectrum = williamson(A)
    full = subspace_eigenpairs(A, SymplecticSubspace(np.eye(6)))
    assert np.allclose([p.d for p in full], spectrum.d)
    U = SymplecticSubspace.from_columns(spectrum.M, [0, 2])
    assert np.allclose(associated_eigenvalues(A, U), spectrum.d[[0, 2]])
    # a J-invariant 2-plane: the precondition for A = I
    U2 = SymplecticSubspace(random_orthosymplectic(2, 1)[:, [0, 2]])
    (p,) = subspace_eigenpairs(np.eye(4), U2)
    assert np.isclose(p.d, 1.0)
    # pair lies inside U2
    B = U2.basis
    w = np.column_stack([p.u, p.v])
    assert np.linalg.norm(w - B @ np.linalg.lstsq(B, w, rcond=None)[0]) < 1e-10


def test_subspace_eigenpairs_requires_invariance():
    with pytest.raises(NotInvariant):
        subspace_eigenpairs(random_spd(4, 8), SymplecticSubspace(np.eye(4)[:, [0, 2]]))


@given(st.integers(2, 6), seeds)
def test_subspace_pairs_are_normalized(n, seed):
    A = random_spd(2 * n, seed)
    spectrum = williamson(A)
    rng = np.random.default_rng(seed)
    idx = sorted(rng.choice(n, size=int(rng.integers(1, n + 1)), replace=False))
    U = SymplecticSubspace.from_columns(spectrum.M, idx)
    pairs = subspace_eigenpairs(A, U)
    assert np.allclose([p.d for p in pairs], spectrum.d[idx], rtol=1e-8)
    for p in pairs:
        assert pair_residual(A, p) <= 1e-8
        assert np.isclose(p.symplectic_norm, 1.0)


def test_curve_scaling_and_shape():
    A = random_spd(6, 2)
    t = np.linspace(0, 1, 7)
    table = curve(A, A, [1, 3], t)
    d = williamson(A).d[[0, 2]]
    assert table.values.shape == (7, 2)
    assert np.allclose(table.values, np.outer(1 + t, d))
    assert table.header() == ["t", "d_1", "d_3", "sum"]
    assert len(list(table.rows())) == 7


def test_curve_small_perturbation():
    A = random_spd(4, 1)
    eps = 1e-6
    table = curve(A, eps * np.eye(4), [1, 2], np.linspace(0, 1, 5))
    shift = table.values - table.values[0]
    # monotone in the Loewner order, bounded by eps * sqrt(cond(A) cond(A + eps I))
    lam = np.linalg.eigvalsh(A)
    bound = eps * np.sqrt((lam[-1] / lam[0]) * (lam[-1] + eps) / (lam[0] + eps))
    assert np.all(shift >= -1e-12) and np.all(shift <= bound)


def test_curve_linear_for_shared_basis():
    A, B = lidskii_equality_pair(3, (1, 3), 0)
    t = np.linspace(0, 1, 11)
    s = curve(A, B, [1, 3], t).sums
    assert np.max(np.abs(s - s[0] - t * (s[-1] - s[0]))) <= 1e-8


def test_from_basis_helper():
    M = random_symplectic(2, 0)
    A = from_basis(M, np.array([1.0, 3.0]))
    assert np.allclose(williamson(A).d, [1.0, 3.0])
