import pytest

from looijenga import geom
from looijenga.geom import UnsupportedPair


def test_registry_has_the_eighteen_pairs():
    pairs = geom.list_pairs()
    assert len(pairs) == 18
    assert sum(p.l == 2 for p in pairs) == 12


def test_flags():
    p = geom.get_pair("dP4(1,0)")
    assert not p.tame and not p.quasi_tame
    assert geom.get_pair("dP3(1,1)").tame


def test_four_component_pair():
    p = geom.get_pair("F0(0,0,0,0)")
    assert p.l == 4
    assert geom.intersections(p, (2, 3)) == (3, 2, 3, 2)


@pytest.mark.parametrize("pid,k2", [("P2(1,4)", 9), ("F0(2,2)", 8), ("dP1(1,3)", 8), ("dP3(1,1)", 6), ("dP5(0,0)", 4)])
def test_self_intersection_of_canonical_class(pid, k2):
    assert geom.get_pair(pid).K2 == k2


def test_contact_orders():
    assert geom.intersections("dP3(1,1)", (3, 1, 2, 2)) == (3, 2)
    assert geom.intersections("P2(1,4)", (2,)) == (2, 4)


def test_effectivity():
    assert geom.is_effective("dP5(0,0)", (1, 1, 1, 1, 1, 1))
    assert not geom.is_effective("dP5(0,0)", (1, 0, 0, 0, 0, 0))
    for p in geom.list_pairs():
        assert geom.is_effective(p, (0,) * p.dim)


def test_lifts():
    assert geom.lift_to("P2(1,4)", (2,), ["dP3(1,1)"])[1] == (2, 2, 2, 2)
    assert geom.lift_to("dP2(1,2)", (3, 1, 2), ["dP3(1,1)"])[1] == (3, 1, 2, 3)
    chain = [p.id for p in geom.lift_chain("P2(1,4)")]
    assert chain[0] == "P2(1,4)" and "dP3(1,1)" in chain


def test_genus_polynomial():
    assert geom.genus_polynomial("F0(0,0,0,0)", (2, 2)) == 2
    assert geom.genus_polynomial("F0(0,0,0,0)", (1, 1)) == 0
    assert geom.genus_polynomial("dP3(1,1)", (1, 1, 1, 1)) == 0


def test_orbifold_family():
    p = geom.get_pair("P(1,1,3)")
    assert geom.intersections(p, (2,)) == (2, 8)
    with pytest.raises(ValueError):
        geom.orbifold_pair(0)


def test_unknown_pair():
    with pytest.raises(UnsupportedPair):
        geom.get_pair("dP7(1,1)")


def test_json_export_roundtrip_fields():
    obj = geom.get_pair("dP3(1,1)").to_json_obj()
    assert obj["l"] == 2 and obj["divisors"] == [[1, 0, 0, 0], [2, -1, -1, -1]]
