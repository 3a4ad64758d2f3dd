from fractions import Fraction
from math import comb

import hypothesis.strategies as st
import pytest
from hypothesis import given

from conftest import admissible_q
from qeuler.euler import (
    ClassicalEulerCache,
    QEulerCache,
    classical_euler_poly,
    q_euler_number,
    q_euler_number_closed,
    q_euler_poly,
    q_euler_poly_closed,
    shift_identity_sides,
    verify_boundary_identity,
    verify_shift_identity,
)
from qeuler.qcalc import q_int, sample_points

QS = sample_points(10)


def test_number_examples():
    for W in (1, 3):
        assert q_euler_number(0, W, Fraction(5, 2)) == 1
    # (1 + q^2) E_1 = -q
    assert q_euler_number(1, 1, 2) == Fraction(-2, 5)
    # (1 + q^3) E_2 = -q (1 + 2 q E_1) = -2 (1 - 8/5)
    assert q_euler_number(2, 1, 2) == Fraction(2, 15)


def test_closed_form_examples():
    assert q_euler_number_closed(0, 1, 7) == 1
    assert q_euler_number_closed(1, 1, 2) == Fraction(-2, 5)
    assert q_euler_number_closed(2, 1, 2) == Fraction(2, 15)
    q = Fraction(5, 2)
    assert q_euler_number_closed(5, 3, q) == q_euler_number(5, 3, q)


def test_poly_examples():
    cache = QEulerCache()
    assert q_euler_poly(4, 0, 1, 3, cache) == q_euler_number(4, 1, 3, cache)
    assert q_euler_poly(0, 7, 1, 3) == 1
    # q E_1(1) = -E_1 = q / (1 + q^2) at q = 2
    assert q_euler_poly(1, 1, 1, 2) == Fraction(1, 5)
    with pytest.raises(ValueError):
        q_euler_poly(2, Fraction(1, 2), 3, 2)


@pytest.mark.parametrize("W", [1, 3, 5, 15])
def test_recurrence_matches_closed_form(W):
    cache = QEulerCache()
    for q in QS:
        for n in range(21):
            assert q_euler_number(n, W, q, cache) == q_euler_number_closed(n, W, q)


def test_boundary_identity():
    cache = QEulerCache()
    assert all(verify_boundary_identity(n, q, cache) for q in QS for n in range(21))


@given(admissible_q(), st.integers(0, 8), st.integers(0, 5))
def test_witt_expansion_integer_x(q, n, x):
    assert q_euler_poly(n, x, 1, q) == q_euler_poly_closed(n, x, 1, q)


@given(admissible_q(), st.integers(0, 6), st.integers(0, 12), st.sampled_from([3, 5]))
def test_witt_expansion_fractional_x(q, n, j, W):
    x = Fraction(j, W)
    assert q_euler_poly(n, x, W, q) == q_euler_poly_closed(n, x, W, q)


def test_classical_examples():
    cache = ClassicalEulerCache()
    assert classical_euler_poly(0, Fraction(3, 7), cache) == 1
    assert classical_euler_poly(1, 0, cache) == Fraction(-1, 2)
    assert classical_euler_poly(3, 0, cache) == Fraction(1, 4)


def test_classical_symmetry_relation():
    # E_n(1 - x) = (-1)^n E_n(x), an identity not used by the implementation
    cache = ClassicalEulerCache()
    for n in range(12):
        for x in (Fraction(0), Fraction(1, 3), Fraction(5, 2)):
            assert classical_euler_poly(n, 1 - x, cache) == (-1) ** n * classical_euler_poly(
                n, x, cache
            )


@pytest.mark.parametrize("n", range(11))
@pytest.mark.parametrize("x", range(4))
def test_classical_limit(n, x):
    q = 1 + Fraction(1, 10**8)
    target = classical_euler_poly(n, x)
    assert abs(q_euler_poly(n, x, 1, q) - target) <= Fraction(1, 10**4) * (1 + abs(target))


def test_shift_identity_examples():
    assert verify_shift_identity(0, 1, Fraction(7, 3))
    assert all(verify_shift_identity(m, 1, 2) for m in range(8))
    assert verify_shift_identity(3, 4, Fraction(5, 3))


def test_shift_identity_grid():
    cache = QEulerCache()
    for q in sample_points(8):
        for m in range(11):
            for k in range(1, 7):
                assert verify_shift_identity(m, k, q, cache)


def test_unweighted_shift_rhs_is_wrong_beyond_one_step():
    # Without the q^l weight the right-hand side fails already at m=0, n=2:
    # LHS = q^2 - 1, unweighted RHS = (1+q)(-1 + 1) = 0.
    q = Fraction(2)
    lhs, rhs = shift_identity_sides(0, 2, q)
    unweighted = q_int(2, q) * sum((-1) ** (1 - l) * q_int(l, q) ** 0 for l in range(2))
    assert lhs == rhs == q**2 - 1
    assert unweighted == 0


def test_cache_is_reused():
    cache = QEulerCache()
    q_euler_number(10, 3, 2, cache)
    first = cache.evaluations
    for n in range(11):
        q_euler_number(n, 3, 2, cache)
    assert cache.evaluations == first == 10
    assert (10, 3, Fraction(2)) in cache
    assert (11, 3, Fraction(2)) not in cache


def test_recurrence_against_umbral_definition():
    # q (q E + 1)^n + E_n = [2]_q delta_{0,n}, checked literally
    q = Fraction(4, 3)
    E = [q_euler_number(n, 1, q) for n in range(9)]
    for n in range(9):
        lhs = q * sum(comb(n, l) * q**l * E[l] for l in range(n + 1)) + E[n]
        assert lhs == (1 + q if n == 0 else 0)
