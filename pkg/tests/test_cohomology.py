import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddouble import cohomology, groups

# |H^2(G, mu_N)| = |Ext(G_ab, Z_N)| * |Hom(M(G), Z_N)| by universal coefficients
H2_ORDERS = {
    ("C2", 2): 2, ("C4", 4): 4, ("C6", 6): 6, ("C2xC2", 2): 8, ("C2xC2", 4): 8,
    ("S3", 6): 2, ("D4", 4): 8, ("Q8", 4): 4,
}

# Schur multipliers
SCHUR = {"C3": 1, "C2xC2": 2, "C2 x C4": 2, "S3": 1, "D4": 2, "Q8": 1, "C3 x C3": 3}


@pytest.mark.parametrize("name,N", sorted(H2_ORDERS))
def test_h2_orders(name, N):
    res = cohomology.h2(groups.construct(name), N)
    assert res.order == H2_ORDERS[(name, N)]


@pytest.mark.parametrize("name", sorted(SCHUR))
def test_schur_multipliers(name):
    assert cohomology.stable_order(groups.construct(name)) == SCHUR[name]


@pytest.mark.parametrize("name", ["C4", "C2xC2", "S3", "D4"])
def test_bar_complex_squares_to_zero(name):
    G = groups.construct(name)
    assert cohomology.bar_complex(G, G.exponent()).composite_is_zero()


@pytest.mark.parametrize("name", ["C2xC2", "S3", "D4", "Q8"])
def test_representatives_are_cocycles(name):
    G = groups.construct(name)
    for invariant in (False, True):
        res = cohomology.h2(G, invariant=invariant)
        for r in res.representatives:
            assert cohomology.is_group_cocycle(G, r, res.N)
            assert cohomology.is_normalized(G, r, res.N)
            if invariant:
                assert cohomology.is_invariant(G, r, res.N)


def test_klein_class_is_alternating():
    # the nontrivial stable class on C2 x C2 has nontrivial alternation
    G = groups.construct("C2xC2")
    res = cohomology.h2(G, 2)
    alts = [cohomology.alternation(G, r, 2) for r in res.representatives]
    assert any(any(any(row) for row in a) for a in alts)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["C4", "S3", "D4", "Q8"]), st.data())
def test_coboundaries_are_cocycles_and_solvable(name, data):
    G = groups.construct(name)
    N = G.exponent()
    nu = [0] + [data.draw(st.integers(0, N - 1)) for _ in range(G.order - 1)]
    beta = cohomology.group_coboundary(G, nu, N)
    assert cohomology.is_group_cocycle(G, beta, N)
    found = cohomology.solve_group_coboundary(G, beta, N)
    assert found is not None
    nu2, M = found
    assert cohomology.group_coboundary(G, nu2, M) == beta


def test_cyclic_class_dies_after_lifting():
    # the generator of H^2(C2, mu_2) is not a coboundary at N = 2 but is at N = 4
    G = groups.cyclic(2)
    beta = cohomology.h2(G, 2).representatives[0]
    assert cohomology.solve_group_coboundary(G, beta, 2, [2]) is None
    assert cohomology.solve_group_coboundary(G, beta, 2, [4]) is not None


def test_pairings():
    G = groups.construct("C2xC2")
    assert len(cohomology.pairings(G, "lazy")) == 16
    S3 = groups.construct("S3")
    lams = cohomology.pairings(S3, "lazy")
    assert all(not cohomology.pairing_defects(lam) for lam in lams)
    assert len(cohomology.pairings(S3, "central")) == 1


def test_pairing_defects_flag_bad_map():
    G = groups.construct("C4")
    bad = cohomology.LazyPairing(G, (0, 2, 1, 3))
    assert cohomology.pairing_defects(bad)


def test_smith_invariants():
    assert cohomology.smith_invariants([[2, 4], [6, 8]]) == [2, 4]
