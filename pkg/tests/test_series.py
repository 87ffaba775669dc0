from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfmirror.exact import RatFunc
from pfmirror.griffiths import assemble_pf, companion_matrix
from pfmirror.multipoly import BUILTIN_FAMILIES
from pfmirror.series import (
    BadConstantTerm,
    NoRegularSolution,
    NoSolution,
    NotAUnit,
    OrderExhausted,
    PowerSeries,
    SeriesVector,
    apply_log_operator,
    series_arith,
    series_exp_log,
    solve_homogeneous,
    solve_inhomogeneous,
    system_residual,
)
from pfmirror.tables import TABLE2

N = 12
zero = RatFunc.constant(0)
one = RatFunc.constant(1)

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=9)


def _operator(k):
    return assemble_pf(BUILTIN_FAMILIES[k], TABLE2[k])


def test_basic_arithmetic():
    x = PowerSeries.variable(5)
    one_minus = 1 - x
    geo = one_minus.reciprocal()
    assert geo.coeffs == (1, 1, 1, 1, 1)
    assert (x * x).coeffs == (0, 0, 1, 0, 0)
    assert series_arith(x, x, "add").coeffs == (0, 2, 0, 0, 0)
    assert series_arith(geo, None, "theta").coeffs == (0, 1, 2, 3, 4)
    with pytest.raises(NotAUnit):
        x.reciprocal()
    with pytest.raises(ValueError):
        series_arith(x, x, "pow")


def test_from_ratfunc():
    s = PowerSeries.from_ratfunc(RatFunc([0, 2], [-1, 1]), 5)  # 2z/(z-1)
    assert s.coeffs == (0, -2, -2, -2, -2)


def test_exp_of_z():
    e = PowerSeries.variable(8).exp()
    assert list(e.coeffs) == [Fraction(1, factorial(m)) for m in range(8)]
    with pytest.raises(BadConstantTerm):
        PowerSeries.one(4).exp()
    with pytest.raises(BadConstantTerm):
        PowerSeries.variable(4).log()


@settings(max_examples=40, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=8))
def test_exp_log_round_trip(tail):
    f = PowerSeries([0] + tail, 9)
    assert series_exp_log(series_exp_log(f, "exp"), "log") == f
    g = PowerSeries([1] + tail, 9)
    assert series_exp_log(series_exp_log(g, "log"), "exp") == g


@settings(max_examples=40, deadline=None)
@given(st.lists(fractions, min_size=1, max_size=8), st.lists(fractions, min_size=1, max_size=8))
def test_reciprocal_and_product_rule(a, b):
    f = PowerSeries([1] + a, 9)
    g = PowerSeries(b, 9)
    assert f * f.reciprocal() == PowerSeries.one(9)
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()
    assert (f * g).theta() == f.theta() * g + f * g.theta()


def test_derivative_loses_one_exact_coefficient():
    f = PowerSeries([1, 2, 3, 4], 4)
    d = f.derivative()
    assert d.valid == 3 and d[2] == 12
    with pytest.raises(OrderExhausted):
        d[3]
    dd = d.derivative()
    with pytest.raises(OrderExhausted):
        dd[2]
    # binary operations keep the smaller exact length
    assert (f + d).valid == 3


def test_json_round_trip():
    f = PowerSeries([Fraction(1, 3), -2, 0, Fraction(5, 7)], 4)
    assert PowerSeries.from_json(f.to_json()) == f


def test_solver_with_zero_matrix():
    A = [[zero] * 4 for _ in range(4)]
    with pytest.raises(NoRegularSolution):
        # the kernel of the zero matrix is four-dimensional
        solve_homogeneous(A, N)


def test_solver_scalar_exponential():
    # theta w = z w has the regular solution exp(z)
    A = [[RatFunc.variable()]]
    w = solve_homogeneous(A, N)
    assert w[0] == PowerSeries.variable(N).exp()
    assert not any(c for s in system_residual(A, w) for c in s.coeffs)


def test_solver_no_solution():
    # theta v = A v - w0 with A = 0 and w0(0) != 0 is inconsistent at order 0
    A = [[zero]]
    w0 = SeriesVector([PowerSeries.one(4)])
    with pytest.raises(NoSolution):
        solve_inhomogeneous(A, w0, 4)


def test_constant_nilpotent_system():
    # B = 0: f0 = 1 and the log solution is the constant vector e2
    A = companion_matrix(type("Op", (), {"B": (zero,) * 4})())
    w = solve_homogeneous(A, N)
    assert w[0] == PowerSeries.one(N) and all(not any(s.coeffs) for s in w[1:])
    v = solve_inhomogeneous(A, w, N)
    assert v[0] == PowerSeries.zero(N)
    assert v[1] == PowerSeries.one(N)
    assert all(not any(s.coeffs) for s in v[2:])


def _factorial_oracle(spec, order):
    k = spec.k
    out = []
    for m in range(order):
        c = Fraction(factorial(k * m))
        for w in spec.weights:
            c /= factorial(w * m)
        out.append(c / Fraction(k) ** (k * m))
    return out


@pytest.mark.parametrize("k", sorted(BUILTIN_FAMILIES))
def test_regular_period_matches_closed_form(k):
    pf = _operator(k)
    w = solve_homogeneous(companion_matrix(pf), 20)
    # rescaled to the coordinate where the singular point sits at lam
    got = [w[0][m] for m in range(20)]
    assert got == _factorial_oracle(BUILTIN_FAMILIES[k], 20)


@pytest.mark.parametrize("k", sorted(BUILTIN_FAMILIES))
def test_solutions_satisfy_system_and_operator(k):
    pf = _operator(k)
    A = companion_matrix(pf)
    w = solve_homogeneous(A, 16)
    v = solve_inhomogeneous(A, w, 16)
    assert not any(c for s in system_residual(A, w) for c in s.coeffs)
    assert not any(c for s in system_residual(A, v, w) for c in s.coeffs)
    r = apply_log_operator(pf.B, w[0])
    assert not any(r.coeffs[:12])
    assert v[0][0] == 0


def test_truncation_is_stable():
    pf = _operator(8)
    A = companion_matrix(pf)
    short = solve_homogeneous(A, 10)
    long = solve_homogeneous(A, 25)
    assert long[0].coeffs[:10] == short[0].coeffs
    vs = solve_inhomogeneous(A, short, 10)
    vl = solve_inhomogeneous(A, long, 25)
    assert vl[0].coeffs[:10] == vs[0].coeffs


def test_scale_is_linear():
    pf = _operator(6)
    A = companion_matrix(pf)
    w1 = solve_homogeneous(A, 10)
    w3 = solve_homogeneous(A, 10, scale=3)
    assert w3[0] == w1[0] * 3
