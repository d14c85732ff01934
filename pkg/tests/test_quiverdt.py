import random
from fractions import Fraction
from math import comb

import pytest

from looijenga import quiverdt as qd
from looijenga.geom import UnsupportedPair
from looijenga.qalg import ONE, LaurentQ, RationalQ, mobius

GOLDEN = [1, 1, 1, 2, 5, 13, 35, 100, 300, 925, 2915, 9386]


def _two_loop_closed(d):
    # DT^num of the 2-loop quiver from binomial sums
    s = sum(Fraction(mobius(d // k) * (-1) ** k * comb(2 * k - 1, k - 1)) for k in range(1, d + 1) if d % k == 0)
    return (-1) ** d * s / (d * d)


def test_partition_function_coefficients():
    one_minus_q = ONE - LaurentQ.monomial(2)
    P0 = qd.motivic_partition_function(qd.loop_quiver(0), 2)
    assert P0[(0,)] == RationalQ(ONE)
    assert P0[(1,)] == RationalQ(-LaurentQ.monomial(1), one_minus_q)
    P2 = qd.motivic_partition_function(qd.loop_quiver(2), 1)
    assert P2[(1,)] == RationalQ(-LaurentQ.monomial(-1), one_minus_q)


def test_two_loop_sequence():
    s = qd.dt_invariants(qd.loop_quiver(2), 12)
    got = [s.numerical((d,)) for d in range(1, 13)]
    assert got == GOLDEN
    assert got == [_two_loop_closed(d) for d in range(1, 13)]


@pytest.mark.parametrize("m", [0, 1])
def test_small_loop_quivers(m):
    s = qd.dt_invariants(qd.loop_quiver(m), 6)
    assert [s.numerical((d,)) for d in range(1, 7)] == [1, 0, 0, 0, 0, 0]


def test_motivic_refinement_is_integral_and_nonnegative():
    s = qd.dt_invariants(qd.loop_quiver(3), 5)
    for d in s.omega:
        assert all(v >= 0 for v in s.motivic(d).values())
        assert sum(s.motivic(d).values()) == s.numerical(d)


def test_asymmetric_rejected():
    with pytest.raises(qd.AsymmetricQuiver):
        qd.motivic_partition_function(qd.Quiver(((0, 1), (0, 0))), 2)


def test_quiver_file_roundtrip():
    q = qd.Quiver(((1, 2), (2, 0)))
    text = "# two vertices\n" + qd.format_quiver(q)
    assert qd.parse_quiver(text) == q
    with pytest.raises(ValueError):
        qd.parse_quiver("2\n0 1\n")


@pytest.mark.parametrize("seed", range(50))
def test_positivity_on_random_quivers(seed):
    rng = random.Random(seed)
    q = qd.random_symmetric_quiver(rng, max_vertices=3, max_edges=3)
    dmax = {1: 4, 2: 3, 3: 2}[q.n]
    s = qd.dt_invariants(q, dmax)
    for d, om in s.omega.items():
        assert all(c.denominator == 1 for _, c in om.items())
        assert s.numerical(d) >= 0


def test_pair_quiver_for_projective_plane():
    pq = qd.quiver_from_pair("P2(1,4)")
    assert pq.quiver == qd.loop_quiver(2)
    assert pq.kappa == ((1,),) and pq.alpha == (0,)


def test_pair_quiver_vertex_count_is_rank():
    pq = qd.quiver_from_pair("dP3(1,1)")
    assert pq.quiver.n == 4 and pq.quiver.is_symmetric()
    assert pq.quiver.adjacency[0][0] == 0
    assert qd.quiver_from_pair("dP3(0,2)").quiver == pq.quiver


def test_non_quasi_tame_rejected():
    with pytest.raises(UnsupportedPair):
        qd.quiver_from_pair("dP4(1,0)")
    with pytest.raises(UnsupportedPair):
        qd.quiver_from_pair("dP3(0,0,0)")


def test_kp_dt_projective_plane():
    recs = qd.verify_kp_dt("P2(1,4)", 8)
    assert len(recs) == 8 and all(r.ok for r in recs)
    assert [r.dt_num for r in recs] == GOLDEN[:8]


def test_kp_dt_tame_dp3_off_the_unit_vectors():
    recs = qd.verify_kp_dt("dP3(1,1)", 2)
    bad = [r.d for r in recs if not r.ok]
    # the two unit-vector records are the known exceptions
    assert sorted(bad) == [(0, 0, 0, 1), (1, 0, 0, 0)]
