from looijenga import loggw
from looijenga.qalg import LaurentQ, exact_div, q_binomial, q_int


def test_dp3_tame_small_class():
    assert loggw.log_poly("dP3(1,1)", (1, 1, 1, 1)) == q_binomial(2, 1)
    assert loggw.log_result("P2(1,4)", (1,)).genus[0] == 2


def test_four_component_value():
    assert loggw.log_poly("F0(0,0,0,0)", (1, 1)) == LaurentQ.monomial(0)
    assert loggw.log_poly("F0(0,0,0,0)", (2, 3)).at_one() == 36


def test_orbifold_value():
    assert loggw.log_poly("P(1,1,2)", (1,)) == q_binomial(3, 1)


def test_three_component_value():
    assert loggw.log_poly("dP3(0,0,0)", (1, 1, 1, 1)) == LaurentQ.monomial(0)
    assert loggw.log_psi("dP3(0,0,0)", (2, 1, 1, 1)) == 1
    assert loggw.log_psi("F0(0,0,0,0)", (2, 3)) == 1


def test_outside_domain_vanishes():
    assert loggw.log_poly("dP3(1,1)", (1, 0, 0, 0)).is_zero()


def test_conjectural_flag():
    assert loggw.is_conjectural("dP3(0,2)")
    assert not loggw.is_conjectural("dP3(1,1)")
    r = loggw.log_result("dP1(0,4)", (2, 1))
    assert r.conjectural


def test_genus0_only_for_dp5():
    r = loggw.log_result("dP5(0,0)", (1,) * 6)
    assert r.P is None and len(r.genus) == 1


def test_closed_forms_small():
    assert loggw.log_closed_conj("F0(0,4)", (1, 1)) == q_binomial(3, 1)
    want = exact_div(q_int(4), q_int(2)) * q_binomial(2, 1)
    assert loggw.log_closed_conj("dP1(0,4)", (2, 1)) == want


def test_multisum_vs_closed_form():
    for d0 in range(1, 6):
        for d1 in range(1, d0 + 1):
            assert loggw.log_multisum_dp1_04(d0, d1) == loggw.log_closed_conj("dP1(0,4)", (d0, d1))
    for d1 in range(1, 4):
        for d2 in range(1, 4):
            assert loggw.log_multisum_f0_04(d1, d2) == loggw.log_closed_conj("F0(0,4)", (d1, d2))


def test_multisum_empty_moduli():
    assert loggw.log_multisum_f0_04(0, 3).is_zero()
