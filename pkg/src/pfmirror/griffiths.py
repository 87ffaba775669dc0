"""Pole-order reduction and assembly of the logarithmic Picard-Fuchs operator.

The forms ``omega_l = (-1)^(l-1) (l-1)! psi^l (prod x)^(l-1) Omega / Q^l``
span the invariant cohomology for l = 1..4.  Starting from omega_5, each
pole order is reduced by splitting the numerator into a multiple of the
reference numerator plus an element of the Jacobian ideal; the ideal part
``sum A_j dQ/dx_j`` drops to ``sum dA_j/dx_j / (l-1)`` one pole order lower.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .exact import PoleAtOrigin, RatFunc, psi_to_z, ratfunc_eval_zero
from .groebner import (
    GroebnerBasis,
    CofactorDecomposition,
    MonomialOrder,
    buchberger,
    divide_with_cofactors,
    jacobian_split,
)
from .multipoly import (
    NVARS,
    QQ_PSI,
    FamilySpec,
    MultiPoly,
    family_polynomial,
    jacobian_generators,
    partial_derivative,
    product_monomial,
    weighted_degree,
)


class InternalDegreeError(AssertionError):
    pass


class NotMaximallyUnipotent(ArithmeticError):
    pass


class UnsupportedSingularityStructure(ArithmeticError):
    pass


@dataclass(frozen=True)
class RationalForm:
    """``numerator * Omega / Q^pole_order``."""

    numerator: MultiPoly
    pole_order: int
    spec: FamilySpec

    def __post_init__(self):
        if self.pole_order < 1:
            raise ValueError("pole order must be positive")
        if self.numerator and weighted_degree(self.numerator, self.spec) != (self.pole_order - 1) * self.spec.k:
            raise InternalDegreeError(
                f"numerator degree {weighted_degree(self.numerator, self.spec)} "
                f"for pole order {self.pole_order} and k = {self.spec.k}"
            )


@dataclass(frozen=True)
class PFOperator:
    """``theta^4 + B3 theta^3 + B2 theta^2 + B1 theta + B0`` with ``theta = z d/dz``."""

    B: tuple
    k: int
    lam: Fraction


@dataclass
class ReductionStep:
    pole_order: int
    numerator: MultiPoly
    reference: MultiPoly
    decomposition: CofactorDecomposition


@dataclass
class Derivation:
    """Everything produced while reducing omega_5 for one family."""

    spec: FamilySpec
    family: MultiPoly
    basis: GroebnerBasis
    steps: list = field(default_factory=list)
    epsilons_psi: list = field(default_factory=list)
    epsilons: list = field(default_factory=list)


def omega_numerator(spec: FamilySpec, ell: int) -> MultiPoly:
    sign = -1 if (ell - 1) % 2 else 1
    c = RatFunc([0] * ell + [sign * factorial(ell - 1)])
    return MultiPoly._raw({product_monomial(ell - 1): c}, QQ_PSI)


def build_omega_ell(spec: FamilySpec, ell: int) -> RationalForm:
    if not 1 <= ell <= 5:
        raise ValueError("pole order must be in 1..5")
    return RationalForm(omega_numerator(spec, ell), ell, spec)


def divergence(cofactors) -> MultiPoly:
    out = MultiPoly.zero(QQ_PSI)
    for j, a in enumerate(cofactors):
        out = out + partial_derivative(a, j)
    return out


def pole_reduce_step(eta: RationalForm, decomposition: CofactorDecomposition) -> RationalForm:
    """The form one pole order lower that remains after splitting off epsilon*omega_l."""
    ell = eta.pole_order
    if ell < 2:
        raise ValueError("cannot reduce a form with a simple pole")
    num = divergence(decomposition.cofactors).scale(Fraction(1, ell - 1))
    try:
        return RationalForm(num, ell - 1, eta.spec)
    except InternalDegreeError as exc:
        raise InternalDegreeError(f"after reducing pole order {ell}: {exc}") from None


def jacobian_groebner(spec: FamilySpec, kind="grevlex") -> tuple:
    q = family_polynomial(spec)
    gb = buchberger(jacobian_generators(q), MonomialOrder(kind, spec.weights))
    return q, gb


def check_certificate(step: ReductionStep, generators) -> bool:
    """``numerator - eps*reference - sum A_j g_j == 0`` by direct expansion."""
    dec = step.decomposition
    residual = step.numerator - step.reference.scale(dec.epsilon)
    for a, g in zip(dec.cofactors, generators):
        residual = residual - a * g
    return residual.is_zero()


def reduce_omega5(spec: FamilySpec, kind="grevlex", start_scale=1) -> Derivation:
    """Run the full reduction and keep every certificate."""
    if not isinstance(spec, FamilySpec):
        spec = FamilySpec(spec)
    q, gb = jacobian_groebner(spec, kind)
    der = Derivation(spec, q, gb)
    eta = build_omega_ell(spec, 5)
    if start_scale != 1:
        eta = RationalForm(eta.numerator.scale(start_scale), 5, spec)
    # degree 4k lies entirely in the Jacobian ideal
    rem, cof = divide_with_cofactors(eta.numerator, gb)
    if rem:
        raise ArithmeticError("omega_5 numerator is not in the Jacobian ideal")
    dec = CofactorDecomposition(RatFunc.constant(0), cof)
    der.steps.append(ReductionStep(5, eta.numerator, omega_numerator(spec, 5), dec))
    eta = pole_reduce_step(eta, dec)
    eps = {}
    for ell in (4, 3, 2, 1):
        ref = omega_numerator(spec, ell)
        dec = jacobian_split(eta.numerator, ref, gb)
        der.steps.append(ReductionStep(ell, eta.numerator, ref, dec))
        eps[ell] = dec.epsilon
        if ell > 1:
            eta = pole_reduce_step(eta, dec)
    der.epsilons_psi = [eps[ell] for ell in (1, 2, 3, 4)]
    der.epsilons = [psi_to_z(e, spec.k) for e in der.epsilons_psi]
    return der


def derive_epsilons(spec: FamilySpec, kind="grevlex") -> list:
    """``[eps1, eps2, eps3, eps4]`` as rational functions of ``z = psi^-k``."""
    return reduce_omega5(spec, kind).epsilons


# ---------------------------------------------------------------------------
# operator


def extract_lambda(eps4: RatFunc) -> Fraction:
    den = eps4.den
    if len(den) != 2:
        raise UnsupportedSingularityStructure(f"denominator of eps4 is not linear: {eps4}")
    lam = -den[0] / den[1]
    if not lam:
        raise UnsupportedSingularityStructure("singular point coincides with z = 0")
    return lam


def pf_coefficients(k, eps):
    """B0..B3 from the basis change to (omega_1, theta omega_1, ...)."""
    e1, e2, e3, e4 = eps
    k = Fraction(k)
    b0 = -e1 - e2 * (1 / k) - e3 * (2 / k**2) - e4 * (6 / k**3) + 24 / k**4
    b1 = -e2 - e3 * (3 / k) - e4 * (11 / k**2) + 50 / k**3
    b2 = -e3 - e4 * (6 / k) + 35 / k**2
    b3 = -e4 + 10 / k
    return (b0, b1, b2, b3)


def assemble_pf(spec: FamilySpec, eps) -> PFOperator:
    B = pf_coefficients(spec.k, eps)
    for j, b in enumerate(B):
        try:
            v = ratfunc_eval_zero(b)
        except PoleAtOrigin:
            raise NotMaximallyUnipotent(f"B{j} has a pole at z = 0") from None
        if v:
            raise NotMaximallyUnipotent(f"B{j}(0) = {v}")
    return PFOperator(B, spec.k, extract_lambda(eps[3]))


def companion_matrix(pf: PFOperator):
    one, zero = RatFunc.constant(1), RatFunc.constant(0)
    A = [[zero] * 4 for _ in range(4)]
    for i in range(3):
        A[i][i + 1] = one
    A[3] = [-b for b in pf.B]
    return A


def _matmul(a, b):
    n = len(a)
    return [[sum((a[i][t] * b[t][j] for t in range(n)), Fraction(0)) for j in range(n)] for i in range(n)]


def check_max_unipotent(pf: PFOperator) -> bool:
    try:
        if any(ratfunc_eval_zero(b) for b in pf.B):
            return False
    except PoleAtOrigin:
        return False
    a0 = [[ratfunc_eval_zero(x) for x in row] for row in companion_matrix(pf)]
    a2 = _matmul(a0, a0)
    a3 = _matmul(a2, a0)
    a4 = _matmul(a3, a0)
    return any(any(r) for r in a3) and not any(any(r) for r in a4)


def derivation_record(spec: FamilySpec, eps, pf: PFOperator) -> dict:
    return {
        "family": spec.label,
        "weights": list(spec.weights),
        "epsilons": [e.to_str("z") for e in eps],
        "epsilons_json": [e.to_json() for e in eps],
        "B": [b.to_str("z") for b in pf.B],
        "B_json": [b.to_json() for b in pf.B],
        "lambda": str(pf.lam),
        "unipotent": check_max_unipotent(pf),
    }


