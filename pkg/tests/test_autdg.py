import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_autos
from ddouble import autdg as ad
from ddouble import groups, hopf

# |Aut_Hopf(DG)| by brute enumeration; C2 and C2 x C2 are GL_2(F_2) and GL_4(F_2)
AUT_ORDERS = {"C2": 6, "C3": 48, "C4": 96, "S3": 12, "D4": 1024}


@pytest.mark.parametrize("name", sorted(AUT_ORDERS))
def test_enumeration_counts(name):
    _, elems = all_autos(name)
    assert len(elems) == AUT_ORDERS[name]
    assert len(set(elems)) == len(elems)


def test_s3_is_inner_times_gl():
    G, elems = all_autos("S3")
    assert len(ad.inner_autos(G)) <= len(elems)


@pytest.mark.parametrize("name", ["C2", "S3"])
def test_every_element_is_a_hopf_automorphism(name):
    G, elems = all_autos(name)
    DG = hopf.build("DG", G)
    for M in elems:
        cols = M.phi().cols
        f = hopf.LinMap(DG, DG, cols)
        assert hopf.is_hopf_map(f)
        assert f.is_bijective()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["C4", "S3", "D4"]), st.data())
def test_group_laws(name, data):
    G, elems = all_autos(name)
    a, b, c = (data.draw(st.sampled_from(elems)) for _ in range(3))
    assert ad.compose(ad.compose(a, b), c) == ad.compose(a, ad.compose(b, c))
    ident = a.ctx.identity()
    assert ad.compose(a, ad.invert(a)) == ident
    assert ad.compose(ad.invert(a), a) == ident
    # three routes to the product: components, block matrix, induced maps on DG
    ab = ad.compose(a, b)
    assert ab == ad.compose_phi(a, b) == ad.compose_blocks(a, b)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["S3", "D4", "C2xC2"]), st.data())
def test_json_round_trip(name, data):
    G, elems = all_autos(name) if name != "C2xC2" else (groups.construct(name), None)
    if elems is None:
        elems = ad.inner_autos(G) + [ad.context(G).identity()]
    M = data.draw(st.sampled_from(elems))
    back = ad.from_json(G, M.to_json())
    assert back == M
    assert back.phi_hash() == M.phi_hash()


def test_order_divides_group_order():
    G, elems = all_autos("S3")
    orders = {M.order() for M in elems}
    assert all(12 % k == 0 for k in orders)


def test_subgroup_membership():
    G = groups.construct("D4")
    for f in groups.automorphisms(G):
        assert ad.in_V(ad.make_V(G, f.map))
    for w in groups.central_automorphisms(G):
        assert ad.in_Vc(ad.make_Vc(G, w.map))


def test_bad_components_rejected():
    G = groups.construct("S3")
    ctx = ad.context(G)
    M = ctx.identity()
    with pytest.raises(ad.AutError):
        ad.from_components(ctx, [0] * 6, M.bidx, M.a, M.v)


def test_reflection_on_klein():
    G = groups.construct("C2xC2")
    H, C = [0], list(range(4))
    d = ad.ReflectionDatum(H, C, ad.standard_delta(G, C), None, 2)
    r = ad.make_reflection(G, d)
    assert ad.is_bijective(r, exact=True)
    assert not ad.in_V(r)


def test_reflection_datum_validation():
    G = groups.construct("C2xC2")
    bad = ad.ReflectionDatum([0], [0, 1, 2, 3], ((0,) * 4,) * 4, None, 2)
    with pytest.raises(ad.DatumInvalid):
        ad.make_reflection(G, bad)
