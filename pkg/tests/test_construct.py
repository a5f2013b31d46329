import pytest

from cagekit.construct import (FormulationMismatch, RhoArithmeticError, Stage, build_bq,
                               build_gamma, build_gamma_dual, build_hq, build_staged,
                               check_isomorphism, compare_formulations, gamma_rule_side1,
                               sigma)
from cagekit.field import NotPrimePower, make_field
from cagekit.graph import degree_profile, girth, is_bipartite_consistent
from cagekit.labels import RHO, InvalidLabel, Label

QS = [2, 3, 4, 5, 7, 8, 9]


def nbr_labels(g, lab):
    return {g.label(int(v)) for v in g.neighbors(g.index(lab))}


def test_gamma_q2_counts():
    g = build_gamma(2)
    assert g.order == 30 and g.size == 45
    assert degree_profile(g) == {3: 30}


def test_gamma_q2_neighbours_of_origin():
    g = build_gamma(2)
    assert nbr_labels(g, Label(1, 0, 0, 0)) == {
        Label(0, 0, 0, 0), Label(0, 1, 0, 0), Label(0, RHO, 0, 0)}


def test_gamma_q3_neighbours_by_hand():
    # a=b=c=1 over F_3: (w, w+1, w + 2 + 1) = (w, w+1, w)
    g = build_gamma(3)
    assert nbr_labels(g, Label(1, 1, 1, 1)) == {
        Label(0, 0, 1, 0), Label(0, 1, 2, 1), Label(0, 2, 0, 2), Label(0, RHO, 1, 1)}


def test_dual_rule_rho_row():
    g = build_gamma_dual(3)
    assert nbr_labels(g, Label(0, RHO, 1, 1)) == (
        {Label(1, 1, w, 1) for w in range(3)} | {Label(1, RHO, RHO, 1)})


@pytest.mark.parametrize("q", QS)
def test_both_formulations_give_the_same_graph(q):
    compare_formulations(q)
    assert build_gamma(q).labeled_edges() == build_gamma_dual(q).labeled_edges()


def test_mismatch_is_reported_with_an_edge(monkeypatch):
    import cagekit.construct as cc
    real = cc.gamma_rule_side0

    def broken(F, lab):
        out = real(F, lab)
        if lab == Label(0, 0, 0, 0):
            out[0] = Label(1, 0, 0, 1)  # true neighbour is (0,0,0)_1
        return out

    monkeypatch.setattr(cc, "gamma_rule_side0", broken)
    cc.build_gamma_dual.cache_clear()
    try:
        with pytest.raises(FormulationMismatch, match=r"q=3: edge \(0,0,0\)_0 -- \(0,0,0\)_1"):
            compare_formulations(3)
    finally:
        cc.build_gamma_dual.cache_clear()


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_bq_is_induced_subgraph_of_gamma(q):
    g = build_gamma(q)
    affine = [v for v, lab in enumerate(g.labels) if lab.is_affine()]
    sub = g.induced_subgraph(affine)
    bq = build_bq(q)
    assert sub.labels == bq.labels and sub.same_structure(bq)


@pytest.mark.parametrize("q", QS)
def test_bq_and_hq_shape(q):
    for g in (build_bq(q), build_hq(q)):
        assert g.order == 2 * q**3
        assert degree_profile(g) == {q: 2 * q**3}
        assert is_bipartite_consistent(g)


def test_bq_small_examples():
    assert build_bq(2).order == 16 and degree_profile(build_bq(2)) == {2: 16}
    assert girth(build_bq(3)) == 8
    assert girth(build_hq(5)) == 8
    assert build_hq(3).size == 81


def test_q2_girth_is_measured():
    # the q = 2 girth is reported, not taken on trust; B_2 is two 8-cycles
    assert girth(build_bq(2)) == girth(build_hq(2)) == 8


def test_h2_equals_b2_in_characteristic_two():
    assert build_hq(2).labeled_edges() == build_bq(2).labeled_edges()


def test_sigma_examples():
    assert sigma(3, Label(0, 1, 2, 0)) == Label(0, 1, 2, 0)
    assert sigma(3, Label(1, 1, 2, 1)) == Label(1, 1, 2, 2)
    for lab in build_bq(4).labels:
        assert sigma(4, lab) == lab
    with pytest.raises(InvalidLabel):
        sigma(3, Label(1, RHO, 0, 0))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_sigma_is_isomorphism(q):
    assert check_isomorphism(q)


def test_isomorphism_negative_control():
    hq = build_hq(3)
    u, v = hq.edges()[0].tolist()
    assert not check_isomorphism(3, hq=hq.without_edge(u, v))
    assert not check_isomorphism(3, mapping=lambda q, lab: lab)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_stage_orders_and_nesting(q):
    orders = {Stage.BQ: 2 * q**3, Stage.BQ_PRIME: 2 * q**3 + q**2,
              Stage.BQ_DOUBLE_PRIME: 2 * q**3 + 2 * q**2 + q,
              Stage.BQ_TRIPLE_PRIME: 2 * q**3 + 2 * q**2 + 2 * q + 1,
              Stage.GAMMA: 2 * (q**3 + q**2 + q + 1)}
    previous = None
    for stage, n in orders.items():
        g = build_staged(q, stage)
        assert g.order == n
        edges = g.labeled_edges()
        if previous is not None:
            assert previous[0] <= set(g.labels) and previous[1] <= edges
        previous = (set(g.labels), edges)
    assert build_staged(q, Stage.BQ).same_structure(build_bq(q))
    assert build_staged(q, Stage.GAMMA).same_structure(build_gamma(q))


def test_stage_examples_q3():
    b1 = build_staged(3, Stage.BQ_PRIME)
    assert b1.order == 63
    assert {int(d) for v, d in enumerate(b1.degrees) if b1.side[v] == 0} == {4}
    assert {int(d) for v, d in enumerate(b1.degrees) if b1.side[v] == 1} == {3}
    b2 = build_staged(3, "bq2")
    assert b2.order == 75 and girth(b2) == 8


def test_rho_never_reaches_arithmetic():
    F = make_field(3)
    with pytest.raises(RhoArithmeticError):
        from cagekit.construct import bq_rule_side1
        bq_rule_side1(F, Label(1, RHO, 0, 0))
    # the cage rule routes rho labels through the explicit patterns
    assert len(gamma_rule_side1(F, Label(1, RHO, RHO, RHO))) == 4


def test_not_prime_power():
    with pytest.raises(NotPrimePower):
        build_gamma(6)
