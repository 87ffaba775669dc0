"""Mirror map, gauge-fixed Yukawa coupling and instanton numbers.

With ``f0`` the regular period (normalized to 1 at z=0) and ``g`` the
regular part of the logarithmic solution, the coupling in the flat
coordinate is ``c1 / (delta^3 (z - lam) f0^2)`` where
``delta = 1 + theta(g/f0)`` and ``q = c2 * z * exp(g/f0)``.  Its
q-expansion coefficients come from iterating ``h -> h' / (delta exp(g/f0))``
and evaluating at 0, so no series reversion is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .exact import RatFunc
from .griffiths import PFOperator, check_max_unipotent, companion_matrix
from .multipoly import FamilySpec
from .series import (
    OrderExhausted,
    PowerSeries,
    apply_log_operator,
    solve_homogeneous,
    solve_inhomogeneous,
)

DEFAULT_ORDER = 30
DEFAULT_DEPTH = 20
GUARD = 6


class NonIntegralInstanton(ArithmeticError):
    def __init__(self, index, value):
        super().__init__(f"n_{index} = {value} is not an integer")
        self.index = index
        self.value = value


@dataclass
class MirrorData:
    f0: PowerSeries
    g: PowerSeries
    delta: PowerSeries
    u: PowerSeries  # exp(g/f0)
    w0: list = field(default_factory=list)
    v: list = field(default_factory=list)


@dataclass
class YukawaExpansion:
    c1: Fraction
    c2: Fraction
    a: list
    n: list = None

    def to_json(self):
        out = {"c1": str(self.c1), "c2": str(self.c2), "a": [str(x) for x in self.a]}
        out["n"] = None if self.n is None else [str(x) for x in self.n]
        return out

    @classmethod
    def from_json(cls, obj):
        n = obj.get("n")
        return cls(
            Fraction(obj["c1"]),
            Fraction(obj["c2"]),
            [Fraction(x) for x in obj["a"]],
            None if n is None else [int(x) for x in n],
        )


def mirror_data(pf: PFOperator, order: int = DEFAULT_ORDER, f0_scale=1) -> MirrorData:
    """Periods and mirror-map ingredients as exact series.

    ``f0_scale`` multiplies the regular solution; the default keeps
    ``f0(0) = 1``.  ``g/f0``, ``delta`` and ``u`` do not depend on it.
    """
    if not check_max_unipotent(pf):
        raise ValueError("z = 0 is not a point of maximally unipotent monodromy")
    A = companion_matrix(pf)
    w0 = solve_homogeneous(A, order, scale=f0_scale)
    v = solve_inhomogeneous(A, w0, order)
    f0, g = w0[0], v[0]
    ratio = g / f0
    delta = 1 + ratio.theta()
    return MirrorData(f0, g, delta, ratio.exp(), list(w0), list(v))


def inverse_linear_series(lam, order):
    """Expansion of ``1/(z - lam)`` as ``-(1/lam) sum (z/lam)^m``."""
    lam = Fraction(lam)
    return PowerSeries([-(1 / lam) ** (m + 1) for m in range(order)], order)


def h_sequence(pf: PFOperator, data: MirrorData, jmax: int) -> list:
    order = data.f0.order
    if jmax >= order:
        raise OrderExhausted(f"need order > {jmax}, have {order}")
    h = (data.delta**3 * data.f0 * data.f0).reciprocal() * inverse_linear_series(pf.lam, order)
    step = (data.delta * data.u).reciprocal()
    out = [h]
    for _ in range(jmax):
        h = step * h.derivative()
        out.append(h)
    return out


def default_c1(spec: FamilySpec, pf: PFOperator) -> Fraction:
    return -pf.lam * spec.d


def default_c2(spec: FamilySpec) -> Fraction:
    return Fraction(1, spec.k**spec.k)


def q_expansion(spec, pf, depth=DEFAULT_DEPTH, order=DEFAULT_ORDER, c2=None, c1=None, data=None):
    """Coefficients ``a_0..a_depth`` of the coupling in the flat coordinate."""
    c1 = default_c1(spec, pf) if c1 is None else Fraction(c1)
    c2 = default_c2(spec) if c2 is None else Fraction(c2)
    if data is None:
        data = mirror_data(pf, order)
    hs = h_sequence(pf, data, depth)
    a = [c1 / c2**j * hs[j][0] / factorial(j) for j in range(depth + 1)]
    return YukawaExpansion(c1, c2, a)


def _divisors(m):
    return [j for j in range(1, m) if m % j == 0]


def instanton_chain(a):
    """Rational ``n_m`` from the multi-cover inversion, integral or not."""
    if not a:
        raise ValueError("empty expansion")
    n = [Fraction(a[0])]
    for m in range(1, len(a)):
        rest = sum((n[j] * j**3 for j in _divisors(m)), Fraction(0))
        n.append((Fraction(a[m]) - rest) / m**3)
    return n


def extract_n(a) -> list:
    """Integers ``n_j`` with ``a_0 = n_0`` and ``a_m = sum_{j|m} j^3 n_j``."""
    out = []
    for m, v in enumerate(instanton_chain(a)):
        if v.denominator != 1:
            raise NonIntegralInstanton(m, v)
        out.append(int(v))
    return out


def synthesize_a(n) -> list:
    """Inverse of :func:`extract_n`."""
    a = [Fraction(n[0])]
    for m in range(1, len(n)):
        a.append(sum((Fraction(n[j]) * j**3 for j in _divisors(m) + [m]), Fraction(0)))
    return a


@dataclass
class IntegralityReport:
    c2: Fraction
    entries: list  # (m, n_m as Fraction, integral?)

    @property
    def passed(self):
        return all(ok for _, _, ok in self.entries)

    def first_failure(self):
        return next((m for m, _, ok in self.entries if not ok), None)


def verify_integrality(spec, pf, depth=DEFAULT_DEPTH, c2=None, order=None, data=None) -> IntegralityReport:
    """Check that n_1..n_depth are integers under the given c2."""
    c2 = default_c2(spec) if c2 is None else Fraction(c2)
    if depth == 0:
        return IntegralityReport(c2, [])
    order = order or max(DEFAULT_ORDER, depth + GUARD)
    y = q_expansion(spec, pf, depth, order, c2=c2, data=data)
    chain = instanton_chain(y.a)
    return IntegralityReport(c2, [(m, chain[m], chain[m].denominator == 1) for m in range(1, depth + 1)])


def verify_c3(pf: PFOperator) -> bool:
    """``(6 + B3)/z == 6/z + 2/(z - lam)``."""
    z = RatFunc.variable()
    lhs = (pf.B[3] + 6) / z
    rhs = RatFunc([6], [0, 1]) + RatFunc([2], [-pf.lam, 1])
    return lhs == rhs


def operator_residual(pf: PFOperator, f0: PowerSeries) -> PowerSeries:
    return apply_log_operator(pf.B, f0)


def schubert_tangent_lines(n: int) -> int:
    """Lines in P^3 meeting a general degree-n surface with four-fold tangency."""
    if n < 0:
        raise ValueError("n must be non-negative")
    num = n * (n - 4) * (n - 5) * (n - 6) * (n - 7) * (n**3 + 6 * n**2 + 7 * n - 30)
    q, r = divmod(num, 12)
    assert r == 0
    return q


def curve_counts(spec, pf, depth=DEFAULT_DEPTH, order=DEFAULT_ORDER, c2=None) -> YukawaExpansion:
    y = q_expansion(spec, pf, depth, order, c2=c2)
    y.n = extract_n(y.a)
    return y
