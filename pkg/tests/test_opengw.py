from fractions import Fraction

import pytest

from looijenga import geom, opengw
from looijenga.opengw import (
    annulus_bruteforce,
    annulus_generating,
    disk_closed,
    disk_generating,
    framing_factor,
    get_geometry,
    iota_inverse,
    iota_map,
    pants_bruteforce,
    pants_generating,
    vertex_amplitude,
)
from looijenga.qalg import ONE, LaurentQ, RationalQ, q_binomial, q_int
from looijenga.symfun import EMPTY, Partition


def test_vertex_small():
    assert vertex_amplitude(EMPTY, EMPTY, EMPTY) == RationalQ(ONE)
    assert vertex_amplitude(Partition((1,)), EMPTY, EMPTY) == RationalQ(ONE, q_int(1))


def test_vertex_cyclic_symmetry():
    a, b = Partition((2,)), Partition((1,))
    assert vertex_amplitude(a, b, EMPTY) == vertex_amplitude(b, EMPTY, a) == vertex_amplitude(EMPTY, a, b)


def test_framing_factor():
    assert framing_factor(Partition((2,)), 0) == ONE
    assert framing_factor(Partition((2,)), 1) == LaurentQ.monomial(2)
    assert framing_factor(Partition((1, 1)), 1) == LaurentQ.monomial(-2)


def test_disk_closed_small():
    g = get_geometry("Y(dP3)")
    assert disk_closed(g, (1, 1, 1, 0)) == RationalQ(ONE, q_int(1))
    assert disk_closed(g, (2, 1, 0, 0)).is_zero()


@pytest.mark.parametrize("j0", [1, 2, 3])
def test_disk_vertex_engine_matches_closed_form(j0):
    g = get_geometry("Y(dP3)")
    ser = disk_generating(g, j0, (4, 4, 3))
    for j1 in range(1, 5):
        for j2 in range(5):
            for j3 in range(4):
                assert ser.get((j1, j2, j3), RationalQ(0)) == disk_closed(g, (j0, j1, j2, j3))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_orbifold_disk(n):
    g = get_geometry(f"P(1,1,{n})^op")
    for d in (1, 2, 3):
        want = RationalQ(q_binomial((n + 1) * d, d) * (-1) ** (n * d), q_int((n + 1) * d)) * Fraction(1, d)
        assert disk_closed(g, (d,)) == want
        assert disk_generating(g, d, ()).get((), RationalQ(0)) == want


def test_annulus_values():
    assert annulus_generating(1, 1, 1) == RationalQ(ONE)
    assert annulus_generating(0, 1, 1).is_zero()


def test_annulus_vertex_engine():
    for jC in range(3):
        for j1 in range(1, 3):
            for j2 in range(1, 3):
                assert annulus_bruteforce(jC, j1, j2) == annulus_generating(jC, j1, j2)


def test_pants_values():
    assert pants_generating(1, 1) == RationalQ(q_int(1))
    assert pants_generating(1, 2) == RationalQ(q_int(2)) * Fraction(1, 2)


def test_pants_vertex_engine():
    for j1 in range(1, 3):
        for j2 in range(1, 3):
            assert pants_bruteforce(j1, j2) == pants_generating(j1, j2)


def test_degree_maps():
    g = get_geometry("Y(dP3)")
    assert iota_map(g, (1, 1, 1, 0)) == (1, 1, 0, 1)
    assert iota_inverse(g, (1, 1, 0, 1)) == (1, 1, 1, 0)
    assert iota_map(get_geometry("dP2^op(1,0,0)"), (2, 1, 1)) == (2, 1, 1)


def test_alias():
    assert get_geometry("Upsilon(dP3)") is get_geometry("Y(dP3)")


def test_no_open_geometry_without_property_o():
    with pytest.raises(geom.UnsupportedPair):
        opengw.open_geometry_for("dP4(1,0)")


@pytest.mark.parametrize("pid", ["dP2(1,0,0)", "F0(0,0,0,0)", "P2(1,1,1)", "F0(2,0,0)", "dP1(1,1,0)", "P(1,1,2)"])
def test_log_open_identity(pid):
    recs = opengw.verify_log_open(pid, 3)
    assert recs and all(r.ok for r in recs)


def test_log_open_genus0_two_components():
    for pid in ("P2(1,4)", "dP1(1,3)", "dP2(1,2)", "F0(2,2)", "dP3(0,2)"):
        recs = [r for r in opengw.verify_log_open(pid, 3) if r.kind == "genus0"]
        assert recs and all(r.ok for r in recs)


def test_partner_geometry_matches_conjectural_refinement():
    recs = [r for r in opengw.verify_log_open("dP3(0,2)", 3) if r.kind == "q-conjectural"]
    assert recs and all(r.ok for r in recs)
