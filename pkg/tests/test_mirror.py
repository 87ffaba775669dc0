import json
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfmirror.exact import RatFunc
from pfmirror.griffiths import PFOperator, assemble_pf
from pfmirror.mirror import (
    MirrorData,
    NonIntegralInstanton,
    YukawaExpansion,
    curve_counts,
    default_c1,
    default_c2,
    extract_n,
    h_sequence,
    instanton_chain,
    mirror_data,
    operator_residual,
    q_expansion,
    schubert_tangent_lines,
    synthesize_a,
    verify_c3,
    verify_integrality,
)
from pfmirror.multipoly import BUILTIN_FAMILIES
from pfmirror.series import OrderExhausted, PowerSeries
from pfmirror.tables import TABLE2, TABLE3

QUINTIC = BUILTIN_FAMILIES[5]


@pytest.fixture(scope="module")
def quintic_pf():
    return assemble_pf(QUINTIC, TABLE2[5])


def test_mirror_data_normalization(quintic_pf):
    data = mirror_data(quintic_pf, 10)
    assert data.f0[0] == 1 and data.g[0] == 0
    assert data.delta[0] == 1 and data.u[0] == 1
    # f0 = sum (5m)!/(m!)^5 (z/5^5)^m
    assert data.f0[1] == Fraction(120, 3125)


def test_h_sequence_start(quintic_pf):
    data = mirror_data(quintic_pf, 10)
    hs = h_sequence(quintic_pf, data, 2)
    assert hs[0][0] == -1 / quintic_pf.lam
    assert hs[1][0] == Fraction(-23, 125)
    with pytest.raises(OrderExhausted):
        h_sequence(quintic_pf, data, 10)


def test_h_sequence_degenerate_data():
    # f0 = 1 and g = 0 leave only derivatives of 1/(z + 1)
    n = 8
    data = MirrorData(PowerSeries.one(n), PowerSeries.zero(n), PowerSeries.one(n), PowerSeries.one(n))
    pf = PFOperator((RatFunc.constant(0),) * 4, 5, Fraction(-1))
    hs = h_sequence(pf, data, 5)
    assert [h[0] for h in hs] == [(-1) ** j * factorial(j) for j in range(6)]


def test_quintic_yukawa_coefficients(quintic_pf):
    y = q_expansion(QUINTIC, quintic_pf, depth=3, order=10)
    assert y.c1 == -5 and y.c2 == Fraction(1, 3125)
    assert y.a[:3] == [5, 2875, 4876875]
    assert y.a[0] == QUINTIC.d


def test_extract_n_examples():
    assert extract_n([5, 2875, 4876875]) == [5, 2875, 609250]
    assert extract_n([1, 1, 9, 28, 73]) == [1, 1, 1, 1, 1]
    with pytest.raises(NonIntegralInstanton) as info:
        extract_n([0, 0, 1])
    assert info.value.index == 2 and info.value.value == Fraction(1, 8)
    with pytest.raises(ValueError):
        instanton_chain([])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-10**12, 10**12), min_size=1, max_size=15))
def test_multicover_round_trip(n):
    assert extract_n(synthesize_a(n)) == n


def test_integrality_passes_for_builtin_families(results):
    for k, res in results.items():
        rep = verify_integrality(res.spec, res.pf, depth=20, data=res.data)
        assert rep.passed, (k, rep.first_failure())
        assert len(rep.entries) == 20


def test_integrality_fails_for_wrong_c2(quintic_pf):
    rep = verify_integrality(QUINTIC, quintic_pf, depth=5, c2=Fraction(2, 3125))
    assert not rep.passed
    assert rep.first_failure() is not None
    assert verify_integrality(QUINTIC, quintic_pf, depth=0).passed


@pytest.mark.parametrize("k", sorted(BUILTIN_FAMILIES))
def test_published_instanton_numbers(results, k):
    assert results[k].expansion.n[:5] == TABLE3[k]


def test_c3_check(quintic_pf):
    assert verify_c3(quintic_pf)
    B = list(quintic_pf.B)
    B[3] = B[3] + 1
    assert not verify_c3(PFOperator(tuple(B), 5, quintic_pf.lam))


def test_operator_annihilates_f0(quintic_pf):
    data = mirror_data(quintic_pf, 20)
    r = operator_residual(quintic_pf, data.f0)
    assert not any(r.coeffs[:16])


def test_schubert_numbers():
    assert schubert_tangent_lines(8) == 14752
    assert schubert_tangent_lines(9) == 112320
    for n in range(4, 8):
        assert schubert_tangent_lines(n) == 0
    with pytest.raises(ValueError):
        schubert_tangent_lines(-1)


def test_degree_eight_doubling(results):
    assert results[8].expansion.n[1] == 2 * schubert_tangent_lines(8)


def test_independent_of_truncation_order(quintic_pf):
    a = q_expansion(QUINTIC, quintic_pf, depth=8, order=14).a
    b = q_expansion(QUINTIC, quintic_pf, depth=8, order=24).a
    assert a == b


def test_depth_needs_enough_order(quintic_pf):
    with pytest.raises(OrderExhausted):
        q_expansion(QUINTIC, quintic_pf, depth=10, order=10)


def test_gauge_invariance(quintic_pf):
    c = Fraction(-7, 3)
    data = mirror_data(quintic_pf, 12, f0_scale=c)
    assert data.f0[0] == c
    c1 = default_c1(QUINTIC, quintic_pf) * c**2
    scaled = q_expansion(QUINTIC, quintic_pf, depth=6, order=12, c1=c1, data=data)
    assert scaled.a == q_expansion(QUINTIC, quintic_pf, depth=6, order=12).a


def test_defaults():
    pf = assemble_pf(BUILTIN_FAMILIES[10], TABLE2[10])
    assert default_c1(BUILTIN_FAMILIES[10], pf) == -12500 * 2
    assert default_c2(BUILTIN_FAMILIES[10]) == Fraction(1, 10**10)


def test_expansion_json_round_trip(quintic_pf):
    y = curve_counts(QUINTIC, quintic_pf, depth=4, order=10)
    text = json.dumps(y.to_json())
    back = YukawaExpansion.from_json(json.loads(text))
    assert back == y
    assert back.n == TABLE3[5]
