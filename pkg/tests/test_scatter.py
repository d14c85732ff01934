import pytest

from looijenga import geom, loggw, scatter
from looijenga.qalg import ONE, LaurentQ, q_binomial
from looijenga.scatter import EndpointOnWall, complete_scattering, quantum_transport, simple_wall


def test_simple_collision_creates_one_wall():
    # walls run along -rho, so these meet at the origin
    a = simple_wall((1, 0), (1, 0), (1, 0))
    b = simple_wall((0, 1), (0, 1), (0, 1))
    d = complete_scattering([a, b], (1, 1))
    new = [w for w in d.walls if w not in (a, b)]
    assert len(new) == 1
    assert new[0].rho == (1, 1) and new[0].tau == (1, 1)


def test_budget_blocks_collision():
    a = simple_wall((1, 0), (1, 0), (1, 0))
    b = simple_wall((0, 1), (0, 1), (0, 1))
    assert len(complete_scattering([a, b], (1, 0)).walls) == 2


def test_empty_diagram():
    assert complete_scattering([], (2,)).walls == ()


def test_transport_with_pairing_two():
    w = simple_wall((0, 0), (1, 0), (1,))
    # crossing with <n, m> = 2 multiplies by (1 + t q^{-1/2} z)(1 + t q^{1/2} z)
    out = quantum_transport(ONE, (0, 2), w, (1, 1), tvec=(0,))
    coeffs = {t: c for c, m, t in out}
    assert coeffs[(0,)] == ONE
    assert coeffs[(1,)] == q_binomial(2, 1)
    assert coeffs[(2,)] == ONE


def test_transport_parallel_is_identity():
    w = simple_wall((0, 0), (1, 0), (1,))
    out = quantum_transport(ONE, (1, 0), w, (1, 1), tvec=(0,))
    assert [(c, m) for c, m, _ in out] == [(ONE, (1, 0))]


def test_endpoint_on_wall_is_rejected():
    d = complete_scattering([simple_wall((0, 0), (1, 0), (1,))], (1,))
    with pytest.raises(EndpointOnWall):
        scatter.broken_lines(d, (0, 1), (-1, 0))


def test_tame_model_small_degrees():
    m = scatter.get_model("dP3(1,1)")
    assert scatter.log_invariant_2pt(m, (1, 1, 1, 1)) == q_binomial(2, 1)
    for d in [(2, 1, 1, 1), (2, 2, 1, 1), (2, 1, 2, 2), (3, 2, 2, 2)]:
        assert scatter.log_invariant_2pt(m, d) == loggw.dp311_poly(d)


def test_three_component_model():
    m = scatter.get_model("dP3(0,0,0)")
    assert scatter.log_invariant_3pt(m, (1, 1, 1, 1)) == LaurentQ.monomial(0)
    assert scatter.log_invariant_psi(m, (1, 1, 1, 1)) == 1
    for d in [(2, 1, 1, 1), (2, 2, 1, 1), (2, 1, 2, 2)]:
        assert scatter.log_invariant_3pt(m, d) == loggw.log_poly("dP3(0,0,0)", d)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_orbifold_model(n):
    m = scatter.get_model(f"P(1,1,{n})")
    for d in (1, 2, 3):
        assert scatter.log_invariant_2pt(m, (d,)) == q_binomial((n + 1) * d, d)


def test_infinite_scattering_models_match_multisums():
    for d0, d1 in [(1, 1), (2, 1), (2, 2), (3, 2)]:
        assert scatter.log_invariant_2pt(scatter.get_model("dP1(0,4)"), (d0, d1)) == loggw.log_multisum_dp1_04(d0, d1)
    for d1, d2 in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        assert scatter.log_invariant_2pt(scatter.get_model("F0(0,4)"), (d1, d2)) == loggw.log_multisum_f0_04(d1, d2)


def test_diagram_text_roundtrip():
    text = "tvars t s\nbudget 1 1\nwall -1 0 1 0 1 0 a\nwall 0 -1 0 1 0 1 b\n"
    tvars, budget, walls = scatter.parse_diagram(text)
    assert tvars == ("t", "s") and budget == (1, 1) and len(walls) == 2
    d = complete_scattering(walls, budget, tvars)
    assert "a" in scatter.format_diagram(d)


def test_unknown_model():
    with pytest.raises(geom.UnsupportedPair):
        scatter.get_model("dP4(1,0)")
