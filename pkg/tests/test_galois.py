import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddouble import cohomology, galois, groups, lazy


def _c3sq_c2():
    """(C3 x C3) semidirect C2, the C2 swapping the two factors."""
    elems = [(a, b, s) for s in (0, 1) for a in range(3) for b in range(3)]

    def mul(x, y):
        a, b, s = x
        c, d, t = y
        if s:
            c, d = d, c
        return ((a + c) % 3, (b + d) % 3, s ^ t)

    return groups.from_elements(elems, mul, name="C3^2:C2")


def _klein_datum_in(G, S):
    """The nondegenerate class on the Klein subgroup S, taken from H^2(S, mu_2)."""
    sub, _ = G.subgroup(list(S))
    res = cohomology.h2(sub, 2)
    for r in res.representatives:
        d = galois.GaloisDatum(G, S, r, 2)
        if d.nondegenerate:
            return d
    raise AssertionError("no nondegenerate class")


@pytest.fixture(scope="module")
def klein():
    return galois.standard_klein_datum()


def test_klein_datum_flags(klein):
    assert klein.nondegenerate and klein.normalized
    assert klein.N == 4
    assert galois.bigalois_criterion(klein)


def test_klein_R_is_galois_and_central_simple(klein):
    R = galois.build_R(klein)
    assert R.is_associative() and R.unit_ok()
    assert R.action_defect() is None
    assert galois.galois_check(R)
    assert R.center_dim() == 1


def test_regular_kdual_is_galois():
    assert galois.galois_check(galois.regular_kdual(groups.construct("S3")))


def test_alpha_is_lazy_and_phi_is_iso(klein):
    alpha = galois.alpha_from(klein)
    assert lazy.is_cocycle(alpha.H, alpha)
    assert lazy.is_lazy_cocycle(alpha.H, alpha)
    assert galois.phi_iso(klein, alpha).ok


def test_datum_json_round_trip(klein):
    back = galois.GaloisDatum.from_json(klein.G, klein.to_json())
    assert back.eta == klein.eta and back.S == klein.S and back.N == klein.N


def test_invalid_data_rejected():
    S3 = groups.construct("S3")
    with pytest.raises(galois.DatumInvalid):
        galois.GaloisDatum(S3, (0, 3), [[0, 0], [0, 0]], 2)
    C2xC2 = groups.construct("C2xC2")
    with pytest.raises(galois.DatumInvalid):
        galois.GaloisDatum(C2xC2, (0, 1, 2, 3), [[0] * 4, [0, 1, 0, 0], [0] * 4, [0] * 4], 2)


def test_degenerate_datum_has_no_alpha():
    G = groups.construct("C2xC2")
    d = galois.GaloisDatum(G, (0, 1, 2, 3), [[0] * 4 for _ in range(4)], 2)
    assert not d.nondegenerate
    with pytest.raises(galois.Degenerate):
        galois.alpha_from(d)


def test_equivariant_count_klein(klein):
    assert galois.equivariant_automorphism_count(klein) == 4


@pytest.mark.parametrize("S", [(0, 2, 4, 6), (0, 2, 5, 7)])
def test_d4_klein_data_are_bigalois(S):
    G = groups.construct("D4")
    d = _klein_datum_in(G, S)
    assert galois.bigalois_criterion(d)
    assert not d.G_invariant_cocycle
    assert galois.equivariant_automorphism_count(d) == G.order


def test_bigalois_criterion_agrees_with_count():
    G = _c3sq_c2()
    S = tuple(range(9))
    nondeg = galois.GaloisDatum(G, S, [[(i % 3) * (j // 3) for j in S] for i in S], 3)
    deg = galois.GaloisDatum(G, S, [[0] * 9 for _ in S], 3)
    assert nondeg.nondegenerate
    assert not galois.bigalois_criterion(nondeg)
    assert galois.equivariant_automorphism_count(nondeg) < G.order
    assert galois.bigalois_criterion(deg)
    assert galois.equivariant_automorphism_count(deg) == G.order


@pytest.mark.parametrize("name,count", [("C2xC2", 1), ("C4", 0), ("S3", 0), ("D4", 0)])
def test_classify_counts(name, count):
    out = galois.classify_lazy_kG(groups.construct(name))
    assert len(out) == count
    for d in out:
        assert d.nondegenerate and d.normalized and d.G_invariant_cocycle


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(["C2xC2", "S3", "C4"]), st.data())
def test_symmetric_alphas_split(name, data):
    G = groups.construct(name)
    alphas = galois.symmetric_lazy_alphas(G, 4)
    S, omega, alpha = data.draw(st.sampled_from(alphas))
    assert galois.is_symmetric_kG(alpha)
    w = galois.symmetric_kG_check(alpha)
    kd = lazy.host(G, w.conductor, "kdualG")
    target = [[v.lift(w.conductor) for v in row] for row in alpha.table]
    assert lazy.coboundary(kd, w.nu).table == target
    assert w.conductor in w.schedule


def test_non_symmetric_alpha_rejected(klein):
    with pytest.raises(lazy.PreconditionFailed):
        galois.symmetric_kG_check(galois.alpha_from(klein))


def test_conductor_schedule():
    assert galois.conductor_schedule(4, groups.construct("S3")) == [4, 8, 16, 24]


def _conj_invariant(alpha, left):
    G = alpha.H.group
    n = G.order
    t = alpha.table

    def c(x, g):
        return G.mul[G.mul[g][x]][G.inv[g]] if left else G.conj(x, g)

    return all(t[x][y] == t[c(x, g)][c(y, g)] for g in range(n) for x in range(n) for y in range(n))


def test_kG_laziness_matches_conjugation_invariance():
    # both ways of writing conjugation (g x g^-1 and g^-1 x g) give the same predicate
    D4 = groups.construct("D4")
    samples = [a for _, _, a in galois.symmetric_lazy_alphas(D4, 4)[:6]]
    samples += [galois.alpha_from(galois.normalize(_klein_datum_in(D4, S))) for S in [(0, 2, 4, 6), (0, 2, 5, 7)]]
    seen = set()
    for alpha in samples:
        generic = lazy.is_lazy_cocycle(alpha.H, alpha, route="generic")
        assert generic == _conj_invariant(alpha, True) == _conj_invariant(alpha, False)
        seen.add(generic)
    assert seen == {True, False}
