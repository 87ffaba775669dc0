from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfmirror.exact import (
    DivisionByZero,
    NotInvariantUnderMuK,
    PoleAtOrigin,
    RatFunc,
    UniPoly,
    parse_rational,
    psi_to_z,
    rational_to_str,
    ratfunc_eval_zero,
    ratfunc_normalize,
    z_to_psi,
)

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x.numerator) < 10**4)
small_polys = st.lists(st.integers(-6, 6).map(Fraction), min_size=0, max_size=4)


@st.composite
def ratfuncs(draw):
    num = draw(small_polys)
    den = draw(small_polys.filter(lambda c: any(c)))
    return RatFunc(num, den)


def test_normalize_constant_cancellation():
    f = ratfunc_normalize(UniPoly([0, 2]), UniPoly([4]))
    assert f.num == (0, Fraction(1, 2)) and f.den == (1,)


def test_normalize_common_factor():
    f = ratfunc_normalize(UniPoly([-1, 0, 1]), UniPoly([-1, 1]))
    assert f.num == (1, 1) and f.den == (1,)


def test_normalize_zero_numerator():
    f = ratfunc_normalize(UniPoly([]), UniPoly([0, 0, 0, 1]))
    assert f.num == () and f.den == (1,)


def test_normalize_zero_denominator():
    with pytest.raises(DivisionByZero):
        RatFunc([1], [])


def test_eval_zero():
    assert ratfunc_eval_zero(RatFunc([0, 2], [-1, 1])) == 0
    assert ratfunc_eval_zero(RatFunc([1], [-625, 625])) == Fraction(-1, 625)
    with pytest.raises(PoleAtOrigin):
        ratfunc_eval_zero(RatFunc([1], [0, 1]))


def test_psi_to_z_quintic_entry():
    # psi^5 / (625 (1 - psi^5))
    f = RatFunc([0, 0, 0, 0, 0, 1], [625, 0, 0, 0, 0, -625])
    g = psi_to_z(f, 5)
    assert g == RatFunc([1], [-625, 625])
    for psi in [Fraction(2), Fraction(-3, 7), Fraction(5, 3), Fraction(11, 2), Fraction(-1, 9)]:
        assert f(psi) == g(psi**-5)


def test_psi_to_z_constant_and_failure():
    assert psi_to_z(RatFunc([7]), 5) == RatFunc([7])
    assert psi_to_z(RatFunc([7]), 3) == RatFunc([7])
    with pytest.raises(NotInvariantUnderMuK):
        psi_to_z(RatFunc([0, 1]), 5)


def test_text_forms():
    assert str(RatFunc([1], [-625, 625])) == "1/(625*(z-1))"
    assert str(RatFunc([-1280, -3], [-1024, 4])) == "-(3*z+1280)/(4*(z-256))"
    assert RatFunc([0, 2], [-1, 1]).to_str("z") == "2*z/(z-1)"
    assert rational_to_str(Fraction(6, 4)) == "3/2"
    assert rational_to_str(Fraction(4, 2)) == "2"
    assert parse_rational("-7/21") == Fraction(-1, 3)


def test_json_round_trip():
    f = RatFunc([62500, -7], [-250000, 20])
    assert RatFunc.from_json(f.to_json()) == f
    assert f.to_json()["den"][-1] == "1"


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=60, deadline=None)
@given(ratfuncs(), ratfuncs(), ratfuncs())
def test_ratfunc_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == RatFunc([0])
    if a:
        assert a * a.inverse() == RatFunc([1])


@settings(max_examples=60, deadline=None)
@given(small_polys, small_polys.filter(any), small_polys.filter(any))
def test_normalize_representative_independent(n, d, c):
    n, d, c = UniPoly(n), UniPoly(d), UniPoly(c)
    f = ratfunc_normalize(n, d)
    assert ratfunc_normalize(c * n, c * d) == f
    assert ratfunc_normalize(f.numerator, f.denominator) == f
    assert f.den[-1] == 1
    assert len(f.numerator.gcd(f.denominator).coeffs) <= 1


@settings(max_examples=60, deadline=None)
@given(ratfuncs(), st.integers(1, 6))
def test_psi_to_z_round_trip(f, k):
    g = z_to_psi(f, k)
    assert psi_to_z(g, k) == f


@settings(max_examples=40, deadline=None)
@given(ratfuncs(), rationals)
def test_evaluation_is_a_homomorphism(f, x):
    try:
        fx = f(x)
    except DivisionByZero:
        return
    assert (f * f)(x) == fx * fx
    assert (f + 1)(x) == fx + 1
