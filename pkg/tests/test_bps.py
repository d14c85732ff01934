import pytest

from looijenga import bps, geom, localgw
from looijenga.qalg import ONE, LaurentQ, RationalQ, exact_div, mobius, q_int


def _omega_four_component(d1, d2):
    # [1]^2/([d1]^2 [d2]^2) sum_k mu(k) k^2 [d1 d2 / k^2]_{q^k}^2
    from math import gcd

    acc = LaurentQ({})
    for k in range(1, gcd(d1, d2) + 1):
        if d1 % k == 0 and d2 % k == 0 and mobius(k):
            acc = acc + q_int(d1 * d2 // (k * k)).substitute_qk(k) ** 2 * (mobius(k) * k * k)
    return exact_div(q_int(1) ** 2 * acc, q_int(d1) ** 2 * q_int(d2) ** 2)


def test_four_component_values():
    assert bps.omega_q("F0(0,0,0,0)", (1, 1)) == ONE
    assert bps.omega_q("F0(0,0,0,0)", (2, 2)) == LaurentQ({2: 1, 0: -2, -2: 1})


def test_four_component_matches_closed_sum():
    for d1 in range(1, 5):
        for d2 in range(1, 5):
            assert bps.omega_q("F0(0,0,0,0)", (d1, d2)) == _omega_four_component(d1, d2)


def test_primitive_two_component_is_genus0_local():
    for d in [(2, 1, 1, 1), (3, 2, 1, 2), (3, 1, 2, 2)]:
        assert bps.omega_q("dP3(1,1)", d).at_one() == localgw.local_point("dP3(1,1)", d)


def test_genus0_equals_kp():
    for d in [(2, 2, 2, 2), (4, 2, 2, 2), (3, 3, 3, 3)]:
        assert bps.omega_genus0("dP3(1,1)", d) == localgw.kp_invariant("dP3(1,1)", d)


@pytest.mark.parametrize("pid", ["dP3(1,1)", "dP3(0,0,0)", "F0(0,0,0,0)", "P2(1,4)", "dP2(1,0,0)"])
def test_integrality(pid):
    recs = bps.verify_integrality(pid, 3)
    assert recs and all(r.ok for r in recs)


def test_bound_is_attained_somewhere():
    recs = bps.verify_integrality("dP3(1,1)", 3)
    assert any(
        r.bound and not r.omega.is_zero() and max(abs(e) for e, _ in r.omega.items()) == r.bound for r in recs
    )


def test_open_route_agrees_for_tame_pairs():
    for pid in ("F0(0,0,0,0)", "dP2(1,0,0)", "P(1,1,2)"):
        for r in bps.verify_integrality(pid, 3):
            assert bps.omega_open(pid, r.degree) == RationalQ(r.omega)


def test_partners_share_bps_invariants():
    for r in bps.verify_integrality("dP3(1,1)", 3):
        if all(c > 0 for c in geom.intersections("dP3(0,2)", r.degree)):
            assert bps.omega_q("dP3(0,2)", r.degree) == r.omega


def test_outside_domain_is_zero():
    assert bps.omega_q("dP3(1,1)", (1, 0, 0, 0)).is_zero()
