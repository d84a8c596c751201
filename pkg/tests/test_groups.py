import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ddouble import groups
from ddouble.groups import ParseError, SizeLimit, TableInvalid

NAMES = ["C1", "C2", "C4", "C6", "C2xC2", "S3", "D4", "Q8", "C2 x S3", "Dih5"]

# name: (order, |Z|, classes, subgroups, |Aut|, exponent)
FACTS = {
    "C4": (4, 4, 4, 3, 2, 4),
    "C2xC2": (4, 4, 4, 5, 6, 2),
    "S3": (6, 1, 3, 6, 6, 6),
    "D4": (8, 2, 5, 10, 8, 4),
    "Q8": (8, 2, 5, 6, 24, 4),
}


@pytest.mark.parametrize("name", NAMES)
def test_group_axioms(name):
    G = groups.construct(name)
    n = G.order
    for a in range(n):
        assert G.mul[0][a] == a == G.mul[a][0]
        assert G.mul[a][G.inv[a]] == 0
        for b in range(n):
            for c in range(n):
                assert G.mul[G.mul[a][b]][c] == G.mul[a][G.mul[b][c]]


@pytest.mark.parametrize("name", sorted(FACTS))
def test_frozen_invariants(name):
    G = groups.construct(name)
    order, z, k, subs, aut, exp = FACTS[name]
    assert G.order == order
    assert len(G.center()) == z
    assert len(G.conjugacy_classes()) == k
    assert len(groups.subgroups(G)) == subs
    assert len(groups.automorphisms(G)) == aut
    assert G.exponent() == exp


def test_parse_products_and_errors():
    G = groups.construct("C2 x S3")
    assert G.order == 12 and not G.is_abelian()
    assert groups.construct("C2×C3").is_abelian()
    with pytest.raises(ParseError):
        groups.construct("A7")
    with pytest.raises(SizeLimit):
        groups.construct("S6")


def test_table_json_round_trip(tmp_path):
    G = groups.construct("D4")
    path = tmp_path / "d4.json"
    path.write_text(json.dumps(G.to_json()))
    H = groups.load_group(table_path=str(path))
    assert H.mul == G.mul


def test_bad_table_rejected():
    with pytest.raises(TableInvalid):
        groups.from_table_json({"order": 2, "table": [[0, 1], [1, 1]]})
    with pytest.raises(TableInvalid):
        groups.from_table_json({"order": 3, "table": [[0, 1], [1, 0]]})


def test_s4_counts_and_aut_limit():
    G = groups.construct("S4")
    assert len(G.conjugacy_classes()) == 5
    assert len(groups.subgroups(G)) == 30
    with pytest.raises(SizeLimit):
        groups.automorphisms(G)


def test_abelianization_and_linear_characters():
    inv = groups.invariants(groups.construct("Q8"))
    assert groups.iso_type(inv["abelianization"]) == [2, 2]
    lc = groups.linear_characters(groups.construct("S3"))
    assert len(lc.table) == 2


@pytest.mark.parametrize("name", ["C4", "C6", "C2xC2", "C2 x C4"])
def test_dual_group_is_perfect(name):
    A = groups.construct(name)
    D = groups.dual_group(A)
    assert D.is_perfect()
    assert groups.iso_type(D.group) == groups.iso_type(A)


def test_invariant_factors():
    assert groups.abelian_decomposition(groups.construct("C2 x C3")).invariant_factors == [6]
    assert groups.abelian_decomposition(groups.construct("C2 x C4 x C2")).invariant_factors == [2, 2, 4]


def test_normal_abelian_and_direct_factors():
    D4 = groups.construct("D4")
    assert len(groups.normal_abelian_subgroups(D4)) == 5
    assert all(len(C) == 1 for H, C in groups.direct_factorizations(D4))
    G = groups.construct("C2 x S3")
    assert any(len(C) == 2 for H, C in groups.direct_factorizations(G))


@given(st.sampled_from(["S3", "D4", "Q8", "C2 x S3"]), st.data())
def test_conjugation_is_action(name, data):
    G = groups.construct(name)
    g, s, t = (data.draw(st.integers(0, G.order - 1)) for _ in range(3))
    # (g^s)^t = g^(st) with g^t = t^-1 g t
    assert G.conj(G.conj(g, s), t) == G.conj(g, G.mul[s][t])


@given(st.sampled_from(["S3", "D4", "Q8"]), st.data())
def test_subgroup_embedding_is_homomorphism(name, data):
    G = groups.construct(name)
    subs = groups.subgroups(G)
    S = data.draw(st.sampled_from(subs))
    H, emb = G.subgroup(S)
    for a in range(H.order):
        for b in range(H.order):
            assert emb.map[H.mul[a][b]] == G.mul[emb.map[a]][emb.map[b]]
