"""Buchberger's algorithm with cofactor tracking.

Works over any exact coefficient field (``Fraction`` or ``RatFunc``).
Internally monomials are packed into one integer, 16 bits per exponent
with a guard bit, so that multiplying monomials is integer addition and a
divisibility test is one subtraction and a mask.  Every basis element
carries its expression in terms of the original generators, which is what
turns a zero remainder into an explicit ideal-membership certificate.
"""

from __future__ import annotations

import heapq
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import RatFunc
from .multipoly import NVARS, MultiPoly, partial_derivative

log = logging.getLogger(__name__)

_BITS = 16
_MASK = (1 << _BITS) - 1
_GUARD = sum(1 << (_BITS * i + _BITS - 1) for i in range(NVARS))
_TOP = 1 << (_BITS * NVARS)


class NonProportionalNormalForm(ArithmeticError):
    pass


def pack(e):
    v = 0
    for i, x in enumerate(e):
        if x >= 1 << (_BITS - 1):
            raise OverflowError("exponent too large")
        v |= x << (_BITS * i)
    return v


def unpack(v):
    return tuple((v >> (_BITS * i)) & _MASK for i in range(NVARS))


def _divides(a, b):
    """True when monomial ``a`` divides ``b`` (packed)."""
    return ((b | _GUARD) - a) & _GUARD == _GUARD


def _lcm(a, b):
    v = 0
    for i in range(NVARS):
        s = _BITS * i
        v |= max((a >> s) & _MASK, (b >> s) & _MASK) << s
    return v


def _coprime(a, b):
    for i in range(NVARS):
        s = _BITS * i
        if (a >> s) & _MASK and (b >> s) & _MASK:
            return False
    return True


def _inverse(c):
    if isinstance(c, RatFunc):
        return c.inverse()
    return 1 / c


@dataclass(frozen=True)
class MonomialOrder:
    """Graded order on exponent vectors with x0 > x1 > ... > x4.

    ``kind`` is ``"grevlex"`` or ``"grlex"``.  The grading uses ``weights``;
    all-ones is the ordinary total degree.
    """

    kind: str = "grevlex"
    weights: tuple = (1,) * NVARS

    def __post_init__(self):
        if self.kind not in ("grevlex", "grlex"):
            raise ValueError(f"unknown order {self.kind!r}")
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    def key(self, e):
        """Integer key, additive in ``e``, increasing with the order."""
        w = sum(a * b for a, b in zip(self.weights, e))
        if self.kind == "grevlex":
            return w * _TOP - pack(e)
        return w * _TOP + sum(x << (_BITS * (NVARS - 1 - i)) for i, x in enumerate(e))

    def packed_key(self, v):
        return self.key(unpack(v))

    def leading(self, p: MultiPoly):
        return max(p.terms, key=self.key)

    def compare(self, a, b):
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


GREVLEX = MonomialOrder()
GRLEX = MonomialOrder("grlex")


class _Keys(dict):
    def __init__(self, order):
        super().__init__()
        self.order = order

    def __missing__(self, v):
        k = self.order.packed_key(v)
        self[v] = k
        return k


def _to_internal(p: MultiPoly):
    return {pack(e): c for e, c in p.terms.items()}


def _to_multipoly(d, field):
    return MultiPoly._raw({unpack(v): c for v, c in d.items()}, field)


def _addmul(acc, q, t, sign=-1):
    """acc += sign * q * t on packed dicts (in place)."""
    for mq, cq in q.items():
        for mt, ct in t.items():
            e = mq + mt
            prod = cq * ct
            v = acc.get(e)
            if v is None:
                acc[e] = prod if sign > 0 else -prod
            else:
                v = v + prod if sign > 0 else v - prod
                if v:
                    acc[e] = v
                else:
                    del acc[e]


class _Element:
    __slots__ = ("lm", "lmkey", "tail", "poly", "transform", "active")

    def __init__(self, poly, keys, transform):
        # poly is monic
        items = sorted(poly.items(), key=lambda t: keys[t[0]], reverse=True)
        self.lm = items[0][0]
        self.lmkey = keys[self.lm]
        self.tail = [(e, keys[e], c) for e, c in items[1:]]
        self.poly = poly
        self.transform = transform
        self.active = True


class GroebnerBasis:
    """Groebner basis of the ideal spanned by ``generators``.

    ``basis`` and ``transform`` are exposed as :class:`MultiPoly` lists;
    ``transform[i][j]`` is the coefficient of ``generators[j]`` in
    ``basis[i]``.
    """

    def __init__(self, generators, order=GREVLEX):
        self.generators = list(generators)
        if not self.generators:
            raise ValueError("need at least one generator")
        self.field = self.generators[0].field
        self.order = order
        self._keys = _Keys(order)
        self._elements = []
        self._divisor_cache = {}
        self._tick = itertools.count()
        self.stats = {"pairs": 0, "zero_reductions": 0, "product_criterion": 0, "chain_criterion": 0}

    # -- public views -------------------------------------------------

    @property
    def basis(self):
        return [_to_multipoly(el.poly, self.field) for el in self._elements if el.active]

    @property
    def transform(self):
        return [
            [_to_multipoly(t, self.field) for t in el.transform] for el in self._elements if el.active
        ]

    def leading_monomials(self):
        return [unpack(el.lm) for el in self._elements if el.active]

    def dump(self):
        """Leading terms of the basis, one per line."""
        lines = []
        for e in self.leading_monomials():
            lines.append(" ".join(f"x{j}^{v}" if v > 1 else f"x{j}" for j, v in enumerate(e) if v) or "1")
        return "\n".join(lines)

    def __len__(self):
        return sum(1 for el in self._elements if el.active)

    # -- reduction ----------------------------------------------------

    def _find_divisor(self, e):
        cached = self._divisor_cache.get(e)
        start = 0
        if cached is not None:
            idx, checked = cached
            if idx is not None and self._elements[idx].active:
                return idx
            start = checked if idx is None else 0
        els = self._elements
        for i in range(start, len(els)):
            el = els[i]
            if el.active and _divides(el.lm, e):
                self._divisor_cache[e] = (i, i + 1)
                return i
        self._divisor_cache[e] = (None, len(els))
        return None

    def _reduce(self, p, track=False):
        """Full reduction of a packed dict (consumed).  Returns (remainder, quotients)."""
        keys = self._keys
        heap = [(-keys[e], e) for e in p]
        heapq.heapify(heap)
        rem = {}
        quots = {}
        els = self._elements
        while heap:
            nk, e = heapq.heappop(heap)
            c = p.pop(e, None)
            if c is None:
                continue
            idx = self._find_divisor(e)
            if idx is None:
                rem[e] = c
                continue
            g = els[idx]
            m = e - g.lm
            km = -nk - g.lmkey
            if track:
                quots.setdefault(idx, {})[m] = c
            for te, tk, tc in g.tail:
                ne = te + m
                prod = c * tc
                v = p.get(ne)
                if v is None:
                    p[ne] = -prod
                    heapq.heappush(heap, (-(tk + km), ne))
                else:
                    v = v - prod
                    if v:
                        p[ne] = v
                    else:
                        del p[ne]
        return rem, quots

    def _combine_transforms(self, base, quots):
        """base - sum_l quots[l] * transform[l], per generator."""
        out = [dict(t) for t in base]
        for idx, q in quots.items():
            tr = self._elements[idx].transform
            for j, t in enumerate(tr):
                if t:
                    _addmul(out[j], q, t, sign=-1)
        return out

    # -- construction ------------------------------------------------

    def _add_element(self, poly, transform):
        lc = poly[max(poly, key=self._keys.__getitem__)]
        if lc != 1:
            inv = _inverse(lc)
            poly = {e: c * inv for e, c in poly.items()}
            transform = [{e: c * inv for e, c in t.items()} for t in transform]
        el = _Element(poly, self._keys, transform)
        self._elements.append(el)
        return len(self._elements) - 1

    def _run(self):
        keys = self._keys
        ngen = len(self.generators)
        queue = []  # (key of lcm, tiebreak, kind, payload)
        gens = []
        for j, g in enumerate(self.generators):
            if not g:
                raise ValueError("zero generator")
            if g.field != self.field:
                raise TypeError("mixed coefficient fields")
            d = _to_internal(g)
            lm = max(d, key=keys.__getitem__)
            gens.append(d)
            heapq.heappush(queue, (keys[lm], next(self._tick), "gen", j))
        pairs = set()

        while queue:
            _, _, kind, payload = heapq.heappop(queue)
            if kind == "gen":
                j = payload
                p = dict(gens[j])
                rem, quots = self._reduce(p, track=True)
                unit = [{} for _ in range(ngen)]
                unit[j] = {0: _one_like(next(iter(gens[j].values())))}
                if not rem:
                    continue
                transform = self._combine_transforms(unit, quots)
            else:
                i, j = payload
                if (i, j) not in pairs:
                    continue
                pairs.discard((i, j))
                self.stats["pairs"] += 1
                a, b = self._elements[i], self._elements[j]
                lcm = _lcm(a.lm, b.lm)
                ma, mb = lcm - a.lm, lcm - b.lm
                s = {}
                for e, c in a.poly.items():
                    s[e + ma] = c
                for e, c in b.poly.items():
                    ne = e + mb
                    v = s.get(ne)
                    if v is None:
                        s[ne] = -c
                    else:
                        v = v - c
                        if v:
                            s[ne] = v
                        else:
                            del s[ne]
                rem, quots = self._reduce(s, track=True)
                if not rem:
                    self.stats["zero_reductions"] += 1
                    continue
                base = [{} for _ in range(ngen)]
                one = _one_like(next(iter(a.poly.values())))
                for jj in range(ngen):
                    if a.transform[jj]:
                        _addmul(base[jj], {ma: one}, a.transform[jj], sign=1)
                    if b.transform[jj]:
                        _addmul(base[jj], {mb: one}, b.transform[jj], sign=-1)
                transform = self._combine_transforms(base, quots)
            h = self._add_element(rem, transform)
            self._update(h, pairs, queue)
            log.debug("basis element %d, lm %s, %d terms", h, unpack(self._elements[h].lm), len(rem))

    def _update(self, h, pairs, queue):
        """Gebauer-Moeller pair update for the new element ``h``."""
        els = self._elements
        lh = els[h].lm
        old = [i for i in range(h) if els[i].active]
        lcms = {i: _lcm(lh, els[i].lm) for i in old}
        # chain criterion among the new pairs
        kept = []
        for i in old:
            li = lcms[i]
            if _coprime(lh, els[i].lm):
                kept.append(i)
                continue
            redundant = False
            for j in old:
                if j != i and _divides(lcms[j], li) and (lcms[j] != li or j < i):
                    redundant = True
                    break
            if redundant:
                self.stats["chain_criterion"] += 1
            else:
                kept.append(i)
        new_pairs = []
        for i in kept:
            if _coprime(lh, els[i].lm):
                self.stats["product_criterion"] += 1
            else:
                new_pairs.append(i)
        # drop old pairs made redundant by h
        for (i, j) in list(pairs):
            lij = _lcm(els[i].lm, els[j].lm)
            if _divides(lh, lij) and _lcm(els[i].lm, lh) != lij and _lcm(lh, els[j].lm) != lij:
                pairs.discard((i, j))
                self.stats["chain_criterion"] += 1
        for i in old:
            if _divides(lh, els[i].lm):
                els[i].active = False
        self._divisor_cache.clear()
        for i in new_pairs:
            pairs.add((i, h))
            heapq.heappush(queue, (self._keys[lcms[i]], next(self._tick), "pair", (i, h)))

    # -- division -----------------------------------------------------

    def reduce_with_quotients(self, p: MultiPoly):
        rem, quots = self._reduce(_to_internal(p), track=True)
        return rem, quots

    def cofactors_from_quotients(self, quots):
        base = [{} for _ in self.generators]
        out = self._combine_transforms(base, quots)
        return [_to_multipoly({e: -c for e, c in t.items()}, self.field) for t in out]

    def normal_form(self, p: MultiPoly) -> MultiPoly:
        rem, _ = self._reduce(_to_internal(p), track=False)
        return _to_multipoly(rem, self.field)


def _one_like(c):
    return RatFunc.constant(1) if isinstance(c, RatFunc) else Fraction(1)


def s_polynomial(f: MultiPoly, g: MultiPoly, order=GREVLEX) -> MultiPoly:
    lf, lg = order.leading(f), order.leading(g)
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    mf = tuple(a - b for a, b in zip(lcm, lf))
    mg = tuple(a - b for a, b in zip(lcm, lg))
    return f.mul_monomial(mf, _inverse(f.terms[lf])) - g.mul_monomial(mg, _inverse(g.terms[lg]))


def buchberger(generators, order=GREVLEX) -> GroebnerBasis:
    gb = GroebnerBasis(generators, order)
    gb._run()
    return gb


def divide_with_cofactors(p: MultiPoly, gb: GroebnerBasis):
    """Return ``(remainder, cofactors)`` with p = sum cofactors[j]*generators[j] + remainder."""
    rem, quots = gb.reduce_with_quotients(p)
    return _to_multipoly(rem, p.field), gb.cofactors_from_quotients(quots)


def normal_form(p: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    return gb.normal_form(p)


@dataclass
class CofactorDecomposition:
    """``p = epsilon * reference + sum_j cofactors[j] * generators[j]``."""

    epsilon: object
    cofactors: list = field(default_factory=list)


def jacobian_split(p: MultiPoly, reference: MultiPoly, gb: GroebnerBasis) -> CofactorDecomposition:
    """Split off the multiple of ``reference`` that makes ``p`` an ideal member."""
    rp, qp = gb.reduce_with_quotients(p)
    rr, qr = gb.reduce_with_quotients(reference)
    if not rr:
        raise ValueError("reference lies in the ideal")
    zero = RatFunc.constant(0) if p.field != "Q" else Fraction(0)
    if not rp:
        eps = zero
    else:
        lm = max(rr, key=gb._keys.__getitem__)
        eps = rp.get(lm, zero) * _inverse(rr[lm])
        for e in set(rp) | set(rr):
            if rp.get(e, zero) - eps * rr.get(e, zero):
                raise NonProportionalNormalForm(
                    "normal form of the numerator is not a multiple of the reference normal form"
                )
    quots = {}
    for idx in set(qp) | set(qr):
        q = dict(qp.get(idx, {}))
        if eps:
            for m, c in qr.get(idx, {}).items():
                v = q.get(m, zero) - eps * c
                if v:
                    q[m] = v
                else:
                    q.pop(m, None)
        if q:
            quots[idx] = q
    return CofactorDecomposition(eps, gb.cofactors_from_quotients(quots))


def jacobian_basis(q: MultiPoly, order=GREVLEX) -> GroebnerBasis:
    return buchberger([partial_derivative(q, j) for j in range(NVARS)], order)
