import pytest

from looijenga.qalg import RationalQ
from looijenga.symfun import (
    EMPTY,
    Partition,
    cauchy_pairing,
    cauchy_pairing_product,
    hook,
    hook_character,
    littlewood_richardson,
    partitions,
    schur_jacobi_trudi,
    schur_principal,
    schur_shifted,
    skew_hook_principal,
    skew_schur_shifted,
    skew_schur_shifted_lr,
)
from looijenga.opengw import hook_pairing


def test_partition_counts():
    assert [len(partitions(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_transpose_and_kappa():
    lam = Partition((3, 1))
    assert lam.transpose == Partition((2, 1, 1))
    assert lam.kappa == -lam.transpose.kappa


@pytest.mark.parametrize("n", range(1, 9))
def test_hook_content_formula_matches_determinant(n):
    for lam in partitions(n):
        assert schur_principal(lam) == schur_jacobi_trudi(lam)


def test_shifted_specialisation_matches_determinant():
    for mu in (Partition((1,)), Partition((2, 1))):
        for n in range(1, 5):
            for lam in partitions(n):
                assert schur_shifted(lam, mu) == schur_jacobi_trudi(lam, mu)


def test_littlewood_richardson_small():
    a, b = Partition((1,)), Partition((2, 1))
    assert littlewood_richardson(Partition((2, 1)), a, Partition((1, 1))) == 1
    assert littlewood_richardson(Partition((3, 2, 1)), b, b) == 2
    assert littlewood_richardson(Partition((4,)), b, a) == 0


def test_lr_coefficients_on_hooks():
    # products of hooks only produce hooks with leg r = s + t or s + t + 1
    for i in range(2, 6):
        for r in range(i):
            lam = hook(i, r)
            for j in range(1, i):
                for s in range(j):
                    for t in range(i - j):
                        expect = int(r in (s + t, s + t + 1))
                        assert littlewood_richardson(lam, hook(j, s), hook(i - j, t)) == expect


@pytest.mark.parametrize("i", range(1, 7))
def test_skew_hook_formula_matches_lr(i):
    for j in range(i):
        for k in range(i + 1):
            for gamma in partitions(k):
                assert skew_hook_principal(i, j, gamma) == skew_schur_shifted_lr(hook(i, j), gamma)


def test_skew_determinant_matches_lr():
    for lam in partitions(5):
        for k in range(1, 4):
            for delta in partitions(k):
                assert skew_schur_shifted(lam, delta) == skew_schur_shifted_lr(lam, delta)


@pytest.mark.parametrize("order", [3, 5])
def test_cauchy_pairing_sum_matches_product(order):
    for a, b in [(EMPTY, EMPTY), (Partition((1,)), EMPTY), (Partition((2,)), Partition((1, 1)))]:
        assert cauchy_pairing(a, b, order) == cauchy_pairing_product(a, b, order)


@pytest.mark.parametrize("d", range(1, 6))
def test_hook_pairing_truncations(d):
    base = cauchy_pairing_product(EMPTY, EMPTY, d)
    from looijenga.symfun import series_inv, series_mul

    inv = series_inv(base, d)
    for j in range(d):
        got = series_mul(cauchy_pairing_product(hook(d, j), EMPTY, d), inv, d)
        want = hook_pairing(d, j)
        assert got == [RationalQ(c) for c in want]


def test_hook_character():
    assert hook_character(hook(4, 0), 4) == 1
    assert hook_character(hook(4, 2), 4) == 1
    assert hook_character(hook(4, 3), 4) == -1
    assert hook_character(Partition((2, 2)), 4) == 0
