from fractions import Fraction
from itertools import permutations, product
from math import comb

import pytest

from looijenga import geom, localgw


@pytest.mark.parametrize("d", range(1, 7))
def test_projective_plane_closed_form(d):
    assert localgw.local_point("P2(1,4)", (d,)) == Fraction((-1) ** d * comb(2 * d, d), 2 * d * d)


def test_small_values():
    assert localgw.local_point("F0(2,2)", (1, 1)) == 1
    assert localgw.local_point("dP5(0,0)", (1,) * 6) == -1
    assert localgw.local_point("F0(0,0,0,0)", (1, 1)) == 1
    assert localgw.local_point("P(1,1,2)", (1,)) == 1


def test_multinomial_formula():
    # F0 with each boundary component made of two adjacent toric divisors
    v = localgw.local_multinomial_toric([[0, 1], [2, 3]], [2, 1, 2, 1])
    assert v == Fraction(comb(3, 1) ** 2, 9)
    assert v == localgw.local_point("F0(2,2)", (1, 2))


def test_kp_of_projective_plane():
    assert [localgw.kp_invariant("P2(1,4)", (d,)) for d in range(1, 6)] == [-1, 1, -1, 2, -5]


def test_kp_needs_two_components():
    with pytest.raises(ValueError):
        localgw.kp_invariant("dP3(0,0,0)", (1, 1, 1, 1))


def test_blow_down_compatibility():
    # classes pulled back from P2 have the same local invariant on dP5
    for d in range(1, 4):
        assert localgw.local_point("dP5(0,0)", (d,) * 6) == localgw.local_point("P2(1,4)", (d,))


def _dp5_box():
    for d in product(range(4), repeat=6):
        if geom.is_effective("dP5(0,0)", d):
            yield d


def test_dp5_symmetry_in_last_four():
    for d in _dp5_box():
        v = localgw.local_dp5(d)
        for perm in permutations(d[2:]):
            assert localgw.local_dp5(d[:2] + perm) == v
