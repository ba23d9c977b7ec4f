"""Numerics for symplectic eigenvalues of positive definite matrices.

Williamson decompositions, symplectic Weyl and Lidskii inequalities with
their equality witnesses, and the symplectic Schur-Horn theorem in both
directions.
"""

__version__ = "0.1.0"

from .config import DEFAULT_TOL, ToleranceConfig
from .errors import NumericalError, SympSpecError, UsageError
from .inequalities import (
    lidskii_check,
    lidskii_equality_test,
    lidskii_trace_conditions,
    trace_extremal_gap,
    verify_lidskii_subspace_conditions,
    weyl_check,
    weyl_equality_witness,
)
from .majorization import (
    compare,
    diagonal_vectors,
    ds_witness,
    is_doubly_stochastic,
    is_doubly_superstochastic,
    n_tilde,
    orthosymplectic_williamson,
    schur_horn_construct,
    schur_horn_weak_check,
)
from .numeric import nullspace, skew_canonical, spd_sqrt, sym_eig
from .symplectic import (
    J,
    is_orthosymplectic,
    is_symplectic,
    random_orthosymplectic,
    random_spd,
    random_symplectic,
)
from .williamson import (
    EigenPair,
    SymplecticSpectrum,
    SymplecticSubspace,
    curve,
    eigenpairs,
    subspace_eigenpairs,
    symplectic_eigenvalues,
    williamson,
)
