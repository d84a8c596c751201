import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddouble import groups, hopf, lazy
from ddouble.hopf import CocycleTable, NotACocycle, NotInvertible
from ddouble.scalar import CycNum

KINDS = ["kG", "kdualG", "DG", "DGstar"]


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("name", ["C3", "S3"])
def test_axioms(kind, name):
    rep = hopf.verify_axioms(hopf.build(kind, groups.construct(name)))
    assert rep["all_pass"], rep


def test_dimensions():
    G = groups.construct("D4")
    assert hopf.build("kG", G).dim == 8
    assert hopf.build("DG", G).dim == 64


def test_broken_structure_is_caught():
    H = hopf.build("kG", groups.construct("C3"))
    mul = [list(row) for row in H.mul]
    mul[1][1] = ((0, H.one),)
    rep = hopf.verify_axioms(H.with_mul(mul))
    assert not rep["all_pass"]
    assert rep["associativity"]["witness"] is not None or rep["bialgebra"]["witness"] is not None


@pytest.mark.parametrize("name", ["C2xC2", "S3"])
def test_double_and_dual_are_paired(name):
    G = groups.construct(name)
    ok, where = hopf.check_dual_pair(hopf.build("DG", G), hopf.build("DGstar", G))
    assert ok, where


def test_exact_sequence_maps_are_hopf():
    maps = hopf.canonical_maps(groups.construct("S3"))
    assert hopf.is_hopf_map(maps["iota"])
    assert hopf.is_hopf_map(maps["p"])


def test_antipode_is_involutive():
    H = hopf.build("DGstar", groups.construct("S3"))
    for i in range(H.dim):
        assert H.apply_antipode(H.apply_antipode({i: H.one})) == {i: H.one}


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["S3", "D4"]), st.sampled_from(KINDS), st.data())
def test_coproduct_is_multiplicative(name, kind, data):
    H = hopf.build(kind, groups.construct(name))
    i = data.draw(st.integers(0, H.dim - 1))
    j = data.draw(st.integers(0, H.dim - 1))
    left = H.coproduct(dict(H.mul[i][j]))
    right = {}
    for (a, b), c in H.coproduct({i: H.one}).items():
        for (x, y), d in H.coproduct({j: H.one}).items():
            for k, u in H.mul[a][x]:
                for m, v in H.mul[b][y]:
                    right[(k, m)] = right.get((k, m), H.zero) + c * d * u * v
    assert left == hopf._clean(right)


def test_trivial_cocycle_is_its_own_inverse():
    H = hopf.build("kdualG", groups.construct("C3"))
    e = CocycleTable.trivial(H)
    assert hopf.conv_inverse2(H, e) == e
    assert hopf.conv2(H, e, e) == e


def test_zero_functional_not_invertible():
    H = hopf.build("kG", groups.construct("C2"))
    with pytest.raises(NotInvertible):
        hopf.conv_inverse1(H, [H.zero, H.zero])


def test_twist_by_lazy_cocycle_keeps_doi_twist():
    # lazy cocycles give Doi twists equal to H
    G = groups.construct("S3")
    H = lazy.host(G)
    beta = lazy.GroupCocycle.from_exps(G, 6, lazy.invariant_betas(G, 6)[1])
    sigma = lazy.embed(beta, "beta", H)
    assert hopf.mul_tables_equal(hopf.doi_twist(H, sigma), H)


def test_twist_rejects_non_cocycle():
    H = hopf.build("kdualG", groups.construct("C3"))
    t = CocycleTable.trivial(H).table
    t[1][1] = H.one + H.one
    with pytest.raises(NotACocycle):
        hopf.twist_algebra(H, CocycleTable(H, t), validate=True)


def test_twisted_group_algebra_is_associative():
    # a mu_2 cocycle on k(C2 x C2) twists to the quaternion-like algebra
    G = groups.construct("C2xC2")
    H = hopf.build("kG", G)
    eta = [[0, 0, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 1, 0, 1]]
    sigma = CocycleTable(H, [[CycNum.root(2, e) for e in row] for row in eta])
    A = hopf.twist_algebra(H, sigma, validate=True)
    for a in range(4):
        for b in range(4):
            for c in range(4):
                assert A.multiply(A.multiply({a: A.one}, {b: A.one}), {c: A.one}) == \
                    A.multiply({a: A.one}, A.multiply({b: A.one}, {c: A.one}))
