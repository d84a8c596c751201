from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddouble.scalar import (ConductorMismatch, CycNum, RootExp, cyclotomic_poly, euler_phi, lcm)

CONDUCTORS = [1, 2, 3, 4, 5, 6, 8, 12]

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyc(draw, N=None):
    N = N or draw(st.sampled_from(CONDUCTORS))
    coeffs = draw(st.lists(small, min_size=euler_phi(N), max_size=euler_phi(N)))
    return CycNum(N, coeffs)


@st.composite
def cyc_triple(draw):
    N = draw(st.sampled_from(CONDUCTORS))
    return draw(cyc(N)), draw(cyc(N)), draw(cyc(N))


def test_cyclotomic_poly_degrees():
    for N in range(1, 25):
        assert len(cyclotomic_poly(N)) - 1 == euler_phi(N)


def test_known_values():
    # zeta_4 = i, zeta_3 + zeta_3^2 = -1, zeta_8^2 = i
    i = CycNum.root(4)
    assert i * i == CycNum.from_rational(4, -1)
    assert CycNum.root(3) + CycNum.root(3, 2) == CycNum.from_rational(3, -1)
    assert CycNum.root(8, 2) == i.lift(8)
    assert sum((CycNum.root(12, k) for k in range(12)), CycNum.zero(12)) == CycNum.zero(12)


def test_root_powers_cycle():
    for N in CONDUCTORS:
        z = CycNum.root(N)
        assert z ** N == CycNum.one(N)
        assert z ** -1 == CycNum.root(N, N - 1)


def test_conductor_mismatch():
    with pytest.raises(ConductorMismatch):
        CycNum.root(3) + CycNum.root(4)
    with pytest.raises(ConductorMismatch):
        CycNum.root(4).lift(6)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        CycNum.zero(5).inv()


@given(cyc_triple())
def test_ring_axioms(t):
    a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == CycNum.zero(a.conductor)


@settings(max_examples=60)
@given(cyc())
def test_inverse(a):
    if a:
        assert a * a.inv() == CycNum.one(a.conductor)


@given(cyc(), st.sampled_from([1, 2, 3]))
def test_lift_is_ring_map(a, k):
    M = a.conductor * k
    b = CycNum.root(a.conductor, 1) + a
    assert (a * b).lift(M) == a.lift(M) * b.lift(M)
    assert (a + b).lift(M) == a.lift(M) + b.lift(M)


@given(cyc())
def test_str_parse_and_json_round_trip(a):
    assert CycNum.parse(str(a)) == a
    assert CycNum.from_json(a.conductor, a.to_json()) == a


@given(cyc())
def test_conjugate_matches_complex(a):
    assert abs(a.conjugate().to_complex() - a.to_complex().conjugate()) < 1e-9


@given(st.sampled_from(CONDUCTORS), st.integers(-30, 30), st.integers(-30, 30))
def test_root_exp_matches_cycnum(N, j, k):
    x, y = RootExp(N, j), RootExp(N, k)
    assert (x * y).to_cyc() == CycNum.root(N, j) * CycNum.root(N, k)
    assert CycNum.root(N, j).as_root_exp() == x
    assert x.inv().to_cyc() * x.to_cyc() == CycNum.one(N)


def test_as_root_exp_rejects_non_roots():
    assert CycNum.from_rational(4, 2).as_root_exp() is None
    assert CycNum.from_rational(6, Fraction(1, 2)).as_root_exp() is None


def test_lcm():
    assert lcm(4, 6) == 12
    assert lcm(2, 3, 5) == 30
