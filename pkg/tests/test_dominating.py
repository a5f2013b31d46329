import random

import pytest

from cagekit.construct import build_gamma
from cagekit.dominating import (EmptySeed, PerfectionFailure, UnsupportedQ, Variant,
                                build_pds, check_matching, closed_neighborhood,
                                common_second_neighborhood, is_closed_form, iq_closed_form,
                                matching_pairs, remove_pds, seed_sets, verify_pds)
from cagekit.graph import degree_profile, distances_from, girth
from cagekit.labels import RHO, Label


def bfs_second_neighbourhood(g, a):
    dist = distances_from(g, a)
    return {v for v in range(g.order) if dist[v] == 2}


def test_closed_neighborhood_examples():
    g = build_gamma(3)
    assert closed_neighborhood(g, []) == frozenset()
    assert len(closed_neighborhood(g, [0])) == 5


def test_closed_neighborhood_of_q_in_gamma8():
    g = build_gamma(8)
    Q = [g.index(lab) for lab in seed_sets(8).Q]
    # q+1 seeds with pairwise disjoint neighbourhoods of size q+1
    assert len(closed_neighborhood(g, Q)) == 9 + 81


def test_common_second_neighborhood_matches_bfs():
    g = build_gamma(4)
    u = 3
    v = int(g.neighbors(u)[0])
    want = bfs_second_neighbourhood(g, u) & bfs_second_neighbourhood(g, v)
    assert common_second_neighborhood(g, [u, v]) == want == set()
    w = int(g.neighbors(v)[1])
    want = bfs_second_neighbourhood(g, u) & bfs_second_neighbourhood(g, w)
    assert common_second_neighborhood(g, [u, w]) == want
    with pytest.raises(EmptySeed):
        common_second_neighborhood(g, [])


@pytest.mark.parametrize("q", [8, 16])
def test_closed_forms_of_intersections(q):
    cert = build_pds(q, strict=False)
    g = cert.graph
    assert {g.label(v) for v in cert.parts["IQ"]} == iq_closed_form(q)
    assert {g.label(v) for v in cert.parts["IS"]} == is_closed_form(q)
    # the two counting identities hold for every even q >= 8
    for n_part, i_part in (("NQ", "IQ"), ("NS", "IS")):
        assert len(cert.parts[n_part]) + len(cert.parts[i_part]) == (q + 1) ** 2 + 2 * (q + 1)


def test_seed_sets():
    s8 = seed_sets(8)
    assert s8.variant is Variant.EVEN_GE8 and len(s8.Q) == len(s8.S) == 9
    assert Label(1, RHO, 1, 1) in s8.S and Label(0, RHO, RHO, 0) in s8.Q
    s4 = seed_sets(4)
    assert s4.variant is Variant.Q4_SPECIAL and s4.x == 2
    assert s4.Q[:4] == tuple(Label(0, RHO, j, 2) for j in range(4))


@pytest.mark.parametrize("q", [2, 3, 5, 9, 6])
def test_unsupported_q(q):
    with pytest.raises(UnsupportedQ):
        build_pds(q)


def test_pds_q8():
    cert = build_pds(8)
    assert cert.perfect and cert.cardinality == 2 * (64 + 32 + 3) == 198
    assert cert.disjoint
    assert set(cert.induced_degrees) == {3, 9}
    assert cert.induced_diameter == 5
    assert cert.outside_counts == {1: 2 * (512 - 24 - 2)}


def test_pds_q4_both_choices_of_x():
    cert = build_pds(4)
    assert cert.perfect and cert.cardinality == 70 and cert.x == 2
    assert cert.alternatives == {3: {"cardinality": 70, "perfect": True}}
    # measured, not asserted by the construction
    assert cert.induced_diameter == 5


def test_verify_pds_vacuous_and_failure():
    g = build_gamma(8)
    assert verify_pds(g, range(g.order)).perfect
    rng = random.Random(3)
    for _ in range(5):
        cert = verify_pds(g, rng.sample(range(g.order), 9))
        assert not cert.perfect
        w = cert.witness
        assert w not in cert.pds
        assert sum(int(x) in cert.pds for x in g.neighbors(w)) != 1


def test_strict_build_raises_with_witness(monkeypatch):
    import cagekit.dominating as dom
    real = dom._assemble

    def lossy(g, seeds):
        parts = real(g, seeds)
        parts["IQ"] = frozenset(sorted(parts["IQ"])[1:])
        return parts

    monkeypatch.setattr(dom, "_assemble", lossy)
    with pytest.raises(PerfectionFailure) as info:
        build_pds(8)
    assert info.value.witness is not None


@pytest.mark.parametrize("q, n", [(4, 100), (8, 972)])
def test_remove_pds(q, n):
    h = remove_pds(q)
    assert h.order == n == 2 * (q**3 - 3 * q - 2)
    assert degree_profile(h) == {q: n}
    assert girth(h) == 8


def test_matching_q8():
    assert check_matching(8)
    assert len(matching_pairs(8)) == 81


def test_matching_negative_control():
    pairs = matching_pairs(8)
    l1, l0 = pairs[-1]
    pairs[-1] = (l1, Label(0, (l0.a + 1) % 8, l0.b, l0.c))
    assert not check_matching(8, pairs)
    assert not check_matching(8, pairs[:-1])


def test_matching_rejects_small_q():
    with pytest.raises(UnsupportedQ):
        check_matching(4)


def test_shifted_seed_option_at_q16():
    # not the construction's q >= 8 seeds: Q' with x = 2 keeps D_Q, D_S disjoint
    cert = build_pds(16, x=2)
    assert cert.variant is Variant.SHIFTED
    assert cert.perfect and cert.disjoint and cert.cardinality == 646
