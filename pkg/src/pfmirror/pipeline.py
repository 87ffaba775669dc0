"""End-to-end run for one family: reduction, operator, series, curve counts."""

from __future__ import annotations

from dataclasses import dataclass

from .griffiths import Derivation, PFOperator, assemble_pf, reduce_omega5
from .mirror import DEFAULT_DEPTH, DEFAULT_ORDER, MirrorData, YukawaExpansion, extract_n, mirror_data, q_expansion
from .multipoly import BUILTIN_FAMILIES, FamilySpec


@dataclass
class FamilyResult:
    spec: FamilySpec
    derivation: Derivation
    pf: PFOperator
    data: MirrorData = None
    expansion: YukawaExpansion = None

    @property
    def epsilons(self):
        return self.derivation.epsilons


def family_spec(selector) -> FamilySpec:
    """Accept 5, "k5", or a weight tuple."""
    if isinstance(selector, FamilySpec):
        return selector
    if isinstance(selector, str) and selector.startswith("k"):
        selector = int(selector[1:])
    if isinstance(selector, int):
        if selector not in BUILTIN_FAMILIES:
            raise KeyError(f"no built-in family with k = {selector}")
        return BUILTIN_FAMILIES[selector]
    return FamilySpec(tuple(selector))


def derive(selector, kind="grevlex") -> FamilyResult:
    spec = family_spec(selector)
    der = reduce_omega5(spec, kind)
    return FamilyResult(spec, der, assemble_pf(spec, der.epsilons))


def run_family(selector, order=DEFAULT_ORDER, depth=DEFAULT_DEPTH, c2=None, extract=True) -> FamilyResult:
    res = derive(selector)
    res.data = mirror_data(res.pf, order)
    res.expansion = q_expansion(res.spec, res.pf, depth, order, c2=c2, data=res.data)
    if extract:
        res.expansion.n = extract_n(res.expansion.a)
    return res
