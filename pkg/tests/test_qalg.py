from fractions import Fraction

import pytest

from looijenga.qalg import (
    ONE,
    LaurentQ,
    NonExactDivision,
    RationalQ,
    AsymmetricInput,
    divisors,
    exact_div,
    genus_coefficients,
    hbar_expand,
    mobius,
    q_binomial,
    q_binomial_derivative_at_root,
    q_factorial,
    q_int,
    q_lucas_check,
    q_pochhammer,
)


def test_q_integer_is_symmetric_difference():
    assert q_int(2) == LaurentQ({2: 1, -2: -1})
    assert q_int(0).is_zero()
    assert q_int(-3) == -q_int(3)


def test_q_binomial_small_values():
    # [4 choose 2] = q^2 + q + 2 + q^-1 + q^-2
    assert q_binomial(4, 2) == LaurentQ({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})
    assert q_binomial(5, 0) == ONE
    assert q_binomial(3, 4).is_zero()
    assert q_binomial(6, 2).at_one() == 15


def test_q_binomial_matches_factorial_quotient():
    for n in range(8):
        for k in range(n + 1):
            assert exact_div(q_factorial(n), q_factorial(k) * q_factorial(n - k)) == q_binomial(n, k)


def test_exact_division_reports_remainder():
    with pytest.raises(NonExactDivision):
        exact_div(q_int(3), q_int(2))
    assert exact_div(q_int(6), q_int(3)) == LaurentQ({3: 1, -3: 1})


def test_substitution_and_evaluation():
    f = q_int(1)
    assert f.substitute_qk(3) == q_int(3)
    assert q_binomial(4, 2).at_one() == 6
    # q^{1/2} -> -q^{1/2} flips odd half-exponents
    assert q_int(1).negate_sqrt() == -q_int(1)


def test_pochhammer():
    # (q; q)_2 = (1 - q)(1 - q^2)
    assert q_pochhammer(LaurentQ.monomial(2), 2) == (ONE - LaurentQ.monomial(2)) * (ONE - LaurentQ.monomial(4))


def test_rational_function_reduces():
    r = RationalQ(q_int(4), q_int(2))
    assert r.is_laurent()
    assert r.to_laurent() == LaurentQ({2: 1, -2: 1})


def test_hbar_expansion_of_qbinomial():
    # [2 choose 1] = q^{1/2} + q^{-1/2} = 2 cos(hbar/2) = 2 - hbar^2/4 + ...
    s = hbar_expand(q_binomial(2, 1), 2)
    assert s.coeffs[:2] == [Fraction(2), Fraction(-1, 4)]
    with pytest.raises(AsymmetricInput):
        hbar_expand(LaurentQ.monomial(1))


def test_genus_coefficients_leading_term_is_classical():
    P = q_binomial(6, 3)
    assert genus_coefficients(P, 2, 3)[0] == 20


def test_mobius_and_divisors():
    assert [mobius(k) for k in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


@pytest.mark.parametrize("d", [2, 3, 4])
def test_q_lucas_divisible_case(d):
    for a in range(1, 4):
        for b in range(0, a + 1):
            assert q_lucas_check(a * d, b * d, d)


def test_q_lucas_general_case_with_residual_phase():
    for d in (2, 3):
        for n in range(8):
            for m in range(n + 1):
                assert q_lucas_check(n, m, d)


def test_binomial_derivative_vanishes_at_roots():
    for d, m, n in [(2, 2, 4), (2, 4, 8), (3, 3, 6), (2, 2, 6), (3, 6, 12)]:
        assert q_binomial_derivative_at_root(n, m, d) == 0
