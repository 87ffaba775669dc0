"""Sparse polynomials in x0..x4 and the one-parameter hypersurface families.

A :class:`MultiPoly` maps exponent 5-tuples to nonzero coefficients.  The
coefficients are either :class:`fractions.Fraction` (field ``"Q"``) or
:class:`~pfmirror.exact.RatFunc` in psi (field ``"Q(psi)"``); the same code
serves both since only ring operations are used.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .exact import RatFunc, as_rational

NVARS = 5
QQ = "Q"
QQ_PSI = "Q(psi)"

ExponentVector = tuple  # 5 non-negative ints


class NotHomogeneous(ValueError):
    pass


class InvalidFamily(ValueError):
    pass


class FieldMismatch(TypeError):
    pass


def _zero_of(field):
    return RatFunc.constant(0) if field == QQ_PSI else Fraction(0)


def _coerce(c, field):
    if field == QQ_PSI:
        if isinstance(c, RatFunc):
            return c
        return RatFunc.constant(c)
    if isinstance(c, RatFunc):
        raise FieldMismatch("rational-function coefficient in a Q polynomial")
    return as_rational(c)


class MultiPoly:
    """Immutable sparse polynomial in x0..x4."""

    __slots__ = ("terms", "field")

    def __init__(self, terms=None, field=QQ):
        self.field = field
        out = {}
        for e, c in (terms or {}).items():
            e = tuple(int(v) for v in e)
            if len(e) != NVARS or min(e) < 0:
                raise ValueError(f"bad exponent vector {e}")
            c = _coerce(c, field)
            if c:
                out[e] = c
        self.terms = out

    @classmethod
    def _raw(cls, terms, field):
        p = object.__new__(cls)
        p.terms = terms
        p.field = field
        return p

    @classmethod
    def zero(cls, field=QQ):
        return cls._raw({}, field)

    @classmethod
    def constant(cls, c, field=QQ):
        return cls({(0,) * NVARS: c}, field)

    @classmethod
    def monomial(cls, exps, coeff=1, field=QQ):
        return cls({tuple(exps): coeff}, field)

    @classmethod
    def variable(cls, j, field=QQ):
        e = [0] * NVARS
        e[j] = 1
        return cls({tuple(e): 1}, field)

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(other, self.field)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _check(self, other):
        if not isinstance(other, MultiPoly):
            return MultiPoly.constant(other, self.field)
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly._raw(out, self.field)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = _coerce(c, self.field)
        if not c:
            return MultiPoly.zero(self.field)
        return MultiPoly._raw({e: v * c for e, v in self.terms.items()}, self.field)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        other = self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly._raw({e: c for e, c in out.items() if c}, self.field)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = MultiPoly.constant(1, self.field)
        for _ in range(n):
            out = out * self
        return out

    def mul_monomial(self, exps, coeff=None):
        coeff = None if coeff is None else _coerce(coeff, self.field)
        out = {}
        for e, c in self.terms.items():
            out[tuple(a + b for a, b in zip(e, exps))] = c if coeff is None else c * coeff
        return MultiPoly._raw(out, self.field)

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def to_field(self, field):
        if field == self.field:
            return self
        if field == QQ_PSI:
            return MultiPoly._raw({e: RatFunc.constant(c) for e, c in self.terms.items()}, QQ_PSI)
        out = {}
        for e, c in self.terms.items():
            if not c.is_constant():
                raise FieldMismatch("coefficient depends on psi")
            out[e] = c.num[0]
        return MultiPoly._raw(out, QQ)

    def sorted_terms(self, order=None):
        """Terms in decreasing monomial order (graded reverse lex by default)."""
        if order is None:
            from .groebner import GREVLEX

            order = GREVLEX
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def to_str(self, order=None):
        """Text form: ``c * x0^e0 x1^e1 ...`` terms joined by `` + ``."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms(order):
            mono = " ".join(f"x{j}^{v}" if v > 1 else f"x{j}" for j, v in enumerate(e) if v)
            cs = f"({c.to_str('psi')})" if isinstance(c, RatFunc) else str(c)
            parts.append(f"{cs} * {mono}" if mono else cs)
        return " + ".join(parts)

    __str__ = to_str

    def __repr__(self):
        return f"MultiPoly({self.to_str()})"

    @classmethod
    def from_str(cls, text, field=QQ):
        """Parse the rational-coefficient text form written by :meth:`to_str`."""
        text = text.strip()
        if text == "0":
            return cls.zero(field)
        terms = {}
        for part in text.split(" + "):
            part = part.strip()
            if " * " in part:
                cs, mono = part.split(" * ", 1)
            elif re.match(r"^-?x\d", part):
                cs, mono = "1", part
            else:
                cs, mono = part, ""
            e = [0] * NVARS
            for tok in mono.split():
                m = re.fullmatch(r"x(\d)(?:\^(\d+))?", tok)
                if not m:
                    raise ValueError(f"cannot parse monomial {tok!r}")
                e[int(m.group(1))] += int(m.group(2) or 1)
            c = Fraction(cs)
            e = tuple(e)
            terms[e] = terms.get(e, 0) + c
        return cls(terms, field)


def poly_arith(p, q, op):
    """Dispatch ``add``, ``sub``, ``mul`` or ``scale`` (q is then a scalar)."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "scale":
        return p.scale(q)
    raise ValueError(f"unknown op {op!r}")


def partial_derivative(p: MultiPoly, j: int) -> MultiPoly:
    out = {}
    for e, c in p.terms.items():
        if e[j]:
            f = list(e)
            f[j] -= 1
            out[tuple(f)] = c * e[j]
    return MultiPoly._raw(out, p.field)


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class FamilySpec:
    """Weights ``k0 >= ... >= k4`` of a one-parameter hypersurface family."""

    weights: tuple

    def __post_init__(self):
        w = tuple(int(v) for v in self.weights)
        object.__setattr__(self, "weights", w)
        if len(w) != NVARS or min(w) < 1:
            raise InvalidFamily(f"need 5 positive weights, got {w}")
        if any(a < b for a, b in zip(w, w[1:])):
            raise InvalidFamily(f"weights must be non-increasing: {w}")
        k = sum(w)
        for j, kj in enumerate(w):
            if k % kj:
                raise InvalidFamily(f"d{j} = {k}/{kj} is not an integer")
        for j0 in range(NVARS):
            if reduce(gcd, (kj for j, kj in enumerate(w) if j != j0)) != 1:
                raise InvalidFamily(f"weights other than k{j0} share a factor")
        if reduce(lcm, self.degrees) != k:
            raise InvalidFamily(f"k = {k} differs from lcm of {self.degrees}")

    @property
    def k(self):
        return sum(self.weights)

    @property
    def degrees(self):
        k = self.k
        return tuple(k // kj for kj in self.weights)

    @property
    def d(self):
        return min(self.degrees)

    @property
    def label(self):
        return f"k{self.k}"


BUILTIN_FAMILIES = {
    5: FamilySpec((1, 1, 1, 1, 1)),
    6: FamilySpec((2, 1, 1, 1, 1)),
    8: FamilySpec((4, 1, 1, 1, 1)),
    10: FamilySpec((5, 2, 1, 1, 1)),
}


def weighted_degree(p: MultiPoly, spec_or_weights) -> int:
    w = spec_or_weights.weights if isinstance(spec_or_weights, FamilySpec) else spec_or_weights
    if not p.terms:
        raise ValueError("zero polynomial has no degree")
    degs = {sum(a * b for a, b in zip(e, w)) for e in p.terms}
    if len(degs) != 1:
        raise NotHomogeneous(f"weighted degrees {sorted(degs)}")
    return degs.pop()


def is_homogeneous(p: MultiPoly, spec_or_weights) -> bool:
    try:
        weighted_degree(p, spec_or_weights)
    except NotHomogeneous:
        return False
    return True


def product_monomial(power=1):
    return (power,) * NVARS


def family_polynomial(spec: FamilySpec) -> MultiPoly:
    """``sum x_j^d_j - k psi prod x_j`` over Q(psi)."""
    if not isinstance(spec, FamilySpec):
        spec = FamilySpec(spec)
    terms = {}
    for j, dj in enumerate(spec.degrees):
        e = [0] * NVARS
        e[j] = dj
        terms[tuple(e)] = RatFunc.constant(1)
    # x0^2 never collides with the product monomial since all d_j >= 2
    terms[product_monomial()] = RatFunc([0, -spec.k])
    return MultiPoly._raw(terms, QQ_PSI)


def jacobian_generators(q: MultiPoly):
    return [partial_derivative(q, j) for j in range(NVARS)]


def euler_operator(p: MultiPoly, weights) -> MultiPoly:
    """``sum_j k_j x_j dp/dx_j``."""
    out = MultiPoly.zero(p.field)
    for j, kj in enumerate(weights):
        e = [0] * NVARS
        e[j] = 1
        out = out + partial_derivative(p, j).mul_monomial(tuple(e)).scale(kj)
    return out
