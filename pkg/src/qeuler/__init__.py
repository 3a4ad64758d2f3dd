"""Exact Carlitz-type q-Euler numbers, fermionic p-adic q-integrals and
permutation-invariance checks for weighted q-Euler sums."""

from .euler import (
    ClassicalEulerCache,
    QEulerCache,
    classical_euler_number,
    classical_euler_poly,
    q_euler_number,
    q_euler_number_closed,
    q_euler_poly,
    q_euler_poly_closed,
    verify_boundary_identity,
    verify_shift_identity,
)
from .padic import (
    FSpec,
    PadicInt,
    PadicQ,
    convergence_profile,
    padic_arith,
    padic_normalize,
    partial_sum,
)
from .qcalc import q_bracket, q_pow, qsample, sample_points
from .symmetry import (
    SymmetryReport,
    WeightVector,
    certify_bound,
    t_hat,
    theorem2_value,
    theorem3_value,
    verify_invariance,
)

__version__ = "0.1.0"
