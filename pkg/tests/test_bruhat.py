import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_autos
from ddouble import autdg as ad
from ddouble import bruhat, groups


def test_weyl_census():
    assert bruhat.weyl_census(2) == [4, 16, 4]
    sizes = bruhat.weyl_census(3)
    assert sum(sizes) == 720 and len(sizes) == 4


@pytest.mark.parametrize("name", ["C2", "C3"])
def test_census_matches_closed_form(name):
    G, elems = all_autos(name)
    rep = bruhat.census(G, elems, orbits=True)
    assert rep["sizes"] == rep["expected_sizes"]
    assert rep["sum_ok"]
    assert sorted(rep["double_coset_sizes"]) == sorted(rep["sizes"])
    assert rep["class_constant_on_cosets"]


def test_expected_sizes_formula():
    # p = 2, n = 2 gives the GL_4(F_2) split
    assert bruhat.expected_sizes(groups.construct("C2xC2")) == [9216, 10368, 576]
    assert sum(bruhat.expected_sizes(groups.construct("C3xC3"))) == 24261120
    assert bruhat.expected_sizes(groups.construct("S3")) is None


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["C4", "S3", "D4"]), st.sampled_from(["double", "left", "right"]), st.data())
def test_certificate_round_trip(name, variant, data):
    G, elems = all_autos(name)
    M = data.draw(st.sampled_from(elems))
    cert = bruhat.decompose(M, variant)
    again = bruhat.DecompositionCert.from_json(json.loads(json.dumps(cert.to_json())))
    assert bruhat.verify_certificate(again, G)
    assert bruhat.verify_certificate(again, G, M, tables=True)


def test_tampered_certificate_fails():
    G, elems = all_autos("D4")
    M = random.Random(3).choice([x for x in elems if not x.is_identity()])
    cert = bruhat.decompose(M, "right")
    data = cert.to_json()
    data["factors"] = data["factors"][:-1]
    res = bruhat.verify_certificate(bruhat.DecompositionCert.from_json(data), G, M)
    assert not res.ok and res.diagnosis == "ReflectionCount"
    other = next(x for x in elems if x != M)
    assert not bruhat.verify_certificate(cert, G, other)


@pytest.mark.parametrize("name", ["S3", "D4"])
def test_keilberg_orders_agree(name):
    G, elems = all_autos(name)
    for M in elems[:200]:
        for order in ("EDB", "DBE"):
            cert = bruhat.keilberg_factorize(M, order)
            assert [f.kind for f in cert.factors][0 if order == "EDB" else -1] == "E"
            assert bruhat.verify_certificate(cert, G, M)


def test_keilberg_refuses_abelian_factor():
    G, elems = all_autos("C4")
    with pytest.raises(bruhat.NotPurelyNonabelian):
        bruhat.keilberg_factorize(elems[1])


def test_mixed_group_has_no_double_variant():
    G = groups.construct("C2 x S3")
    M = ad.context(G).identity()
    with pytest.raises(bruhat.NoBlockView):
        bruhat.decompose(M, "double")
    assert bruhat.verify_certificate(bruhat.decompose(M, "left"), G, M)


def test_purely_nonabelian():
    assert bruhat.is_purely_nonabelian(groups.construct("S3"))
    assert bruhat.is_purely_nonabelian(groups.construct("Q8"))
    assert not bruhat.is_purely_nonabelian(groups.construct("C2 x S3"))
