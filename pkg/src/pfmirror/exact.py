"""Exact rationals, dense univariate polynomials and reduced rational functions.

``Rational`` is the standard library :class:`fractions.Fraction`.  A
:class:`UniPoly` is an immutable tuple of rationals indexed by exponent and a
:class:`RatFunc` is a reduced quotient of two of them with a monic
denominator.  The formal parameter is called ``psi`` or ``z`` depending on
where the function lives; only the printed name differs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DivisionByZero(ZeroDivisionError):
    pass


class PoleAtOrigin(ArithmeticError):
    pass


class NotInvariantUnderMuK(ArithmeticError):
    pass


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def rational_to_str(x) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is one."""
    return str(as_rational(x))


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


# ---------------------------------------------------------------------------
# coefficient-list helpers (tuples of Fraction, lowest degree first)


def _trim(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return tuple(c[:n])


def _add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return _trim(out)


def _sub(a, b):
    out = list(a) + [_ZERO] * (len(b) - len(a))
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


def _scale(a, c):
    if not c:
        return ()
    return tuple(x * c for x in a)


def _mul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        return _scale(b, a[0])
    if len(b) == 1:
        return _scale(a, b[0])
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def _divmod(a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    r = list(a)
    db = len(b) - 1
    inv = _ONE / b[-1]
    q = [_ZERO] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = r[i + db]
        if c:
            c *= inv
            q[i] = c
            for j in range(db + 1):
                r[i + j] -= c * b[j]
    return _trim(q), _trim(r[:db])


def _monic(a):
    if not a or a[-1] == 1:
        return a
    inv = _ONE / a[-1]
    return tuple(x * inv for x in a)


def _primitive_int(a):
    """Return ``(content, integer coefficients)`` with ``a = content * ints``."""
    den = 1
    for x in a:
        den = lcm(den, x.denominator)
    ints = [int(x * den) for x in a]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g == 0:
        return _ONE, ints
    return Fraction(g, den), [v // g for v in ints]


def _gcd(a, b):
    """Monic gcd, via the primitive pseudo-remainder sequence over the integers."""
    if not a:
        return _monic(b)
    if not b:
        return _monic(a)
    if len(a) == 1 or len(b) == 1:
        return (_ONE,)
    _, x = _primitive_int(a)
    _, y = _primitive_int(b)
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _prem_int(x, y)
        if not r:
            break
        if len(r) == 1:
            return (_ONE,)
        g = 0
        for v in r:
            g = gcd(g, v)
        x, y = y, [v // g for v in r]
    return _monic(tuple(Fraction(v) for v in y))


def _prem_int(a, b):
    # pseudo-remainder of integer coefficient lists, trimmed
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [v * lb for v in r]
        for j in range(db + 1):
            r[shift + j] -= c * b[j]
        while r and r[-1] == 0:
            r.pop()
    return r


def _eval(a, x):
    acc = _ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _to_str(a, var):
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        if i == 0:
            mono = str(c)
        else:
            p = var if i == 1 else f"{var}^{i}"
            if c == 1:
                mono = p
            elif c == -1:
                mono = "-" + p
            else:
                mono = f"{c}*{p}"
        parts.append(mono)
    return "+".join(parts).replace("+-", "-")


# ---------------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial over the rationals.  Immutable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim([as_rational(c) for c in coeffs])

    @classmethod
    def _raw(cls, coeffs):
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls([0] * degree + [coeff])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([Fraction(other)])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        return UniPoly._raw(_add(self.coeffs, _coerce_poly(other).coeffs))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return UniPoly._raw(_sub(self.coeffs, _coerce_poly(other).coeffs))

    def __rsub__(self, other):
        return _coerce_poly(other) - self

    def __mul__(self, other):
        return UniPoly._raw(_mul(self.coeffs, _coerce_poly(other).coeffs))

    __rmul__ = __mul__

    def __pow__(self, n):
        out = UniPoly._raw((_ONE,))
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other):
        q, r = _divmod(self.coeffs, _coerce_poly(other).coeffs)
        return UniPoly._raw(q), UniPoly._raw(r)

    def __call__(self, x):
        return _eval(self.coeffs, as_rational(x))

    def gcd(self, other):
        return UniPoly._raw(_gcd(self.coeffs, other.coeffs))

    def derivative(self):
        return UniPoly._raw(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def monic(self):
        return UniPoly._raw(_monic(self.coeffs))

    def to_str(self, var="z"):
        return _to_str(self.coeffs, var)

    def __repr__(self):
        return f"UniPoly({self.to_str('t')})"


def _coerce_poly(x):
    if isinstance(x, UniPoly):
        return x
    return UniPoly([x])


class RatFunc:
    """Reduced rational function ``num/den`` in one formal parameter.

    The denominator is monic and coprime to the numerator; zero is ``0/1``.
    Arithmetic works directly on coefficient tuples so that the Groebner
    kernel, which does millions of these operations, avoids wrapper churn.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=(1,)):
        if isinstance(num, UniPoly):
            num = num.coeffs
        elif isinstance(num, (int, Fraction, str)):
            num = (as_rational(num),)
        if isinstance(den, UniPoly):
            den = den.coeffs
        elif isinstance(den, (int, Fraction, str)):
            den = (as_rational(den),)
        n = _trim([as_rational(c) for c in num])
        d = _trim([as_rational(c) for c in den])
        self.num, self.den = _normalize(n, d)
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        f = object.__new__(cls)
        f.num = num
        f.den = den
        f._hash = None
        return f

    @classmethod
    def constant(cls, c):
        c = as_rational(c)
        return cls._raw((c,) if c else (), (_ONE,))

    @classmethod
    def variable(cls):
        return cls._raw((_ZERO, _ONE), (_ONE,))

    @property
    def numerator(self):
        return UniPoly._raw(self.num)

    @property
    def denominator(self):
        return UniPoly._raw(self.den)

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_constant(self):
        return len(self.num) <= 1 and len(self.den) == 1

    def is_polynomial(self):
        return len(self.den) == 1

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return len(self.den) == 1 and self.num == _trim([Fraction(other)])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __neg__(self):
        return RatFunc._raw(tuple(-c for c in self.num), self.den)

    def __add__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                other = RatFunc.constant(other)
            else:
                return NotImplemented
        return _rf_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                other = RatFunc.constant(other)
            else:
                return NotImplemented
        return _rf_add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                other = Fraction(other)
                if not other:
                    return RatFunc._raw((), (_ONE,))
                return RatFunc._raw(tuple(c * other for c in self.num), self.den)
            return NotImplemented
        return _rf_mul(self, other)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise DivisionByZero("inverse of zero rational function")
        lc = self.num[-1]
        inv = _ONE / lc
        return RatFunc._raw(tuple(c * inv for c in self.den), tuple(c * inv for c in self.num))

    def __truediv__(self, other):
        if not isinstance(other, RatFunc):
            if isinstance(other, (int, Fraction)):
                if not other:
                    raise DivisionByZero("division by zero")
                inv = _ONE / Fraction(other)
                return RatFunc._raw(tuple(c * inv for c in self.num), self.den)
            return NotImplemented
        return _rf_mul(self, other.inverse())

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFunc.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x):
        x = as_rational(x)
        d = _eval(self.den, x)
        if not d:
            raise DivisionByZero(f"pole at {x}")
        return _eval(self.num, x) / d

    def eval_zero(self):
        return ratfunc_eval_zero(self)

    def derivative(self):
        n, d = self.num, self.den
        dn = tuple(i * c for i, c in enumerate(n) if i)
        dd = tuple(i * c for i, c in enumerate(d) if i)
        return RatFunc(_sub(_mul(dn, d), _mul(n, dd)), _mul(d, d))

    def to_str(self, var="z"):
        """Compact text such as ``1/(625*(z-1))`` or ``-(3*z+1280)/(4*(z-256))``."""
        if not self.num:
            return "0"
        c, ints = _primitive_int(self.num)
        if ints[-1] < 0:
            c, ints = -c, [-v for v in ints]
        nterms = sum(1 for v in ints if v)
        inner = _to_str(tuple(Fraction(v) for v in ints), var)
        if len(self.den) == 1:
            if c == 1:
                return inner
            if inner == "1":
                return str(c)
            if nterms > 1:
                inner = f"({inner})"
            return f"{c}*{inner}" if c.numerator != -1 or c.denominator != 1 else f"-{inner}"
        if nterms > 1:
            inner = f"({inner})"
        p = c.numerator
        if inner == "1":
            top = str(p)
        elif p == 1:
            top = inner
        elif p == -1:
            top = f"-{inner}"
        else:
            top = f"{p}*{inner}"
        den = _to_str(self.den, var)
        if sum(1 for v in self.den if v) > 1:
            den = f"({den})"
        if c.denominator != 1:
            den = f"({c.denominator}*{den})"
        elif not den.startswith("("):
            den = f"({den})"
        return f"{top}/{den}"

    def __str__(self):
        return self.to_str("z")

    def __repr__(self):
        return f"RatFunc({self.to_str('t')})"

    def to_json(self):
        return {"num": [str(c) for c in self.num], "den": [str(c) for c in self.den]}

    @classmethod
    def from_json(cls, obj):
        return cls([parse_rational(s) for s in obj["num"]], [parse_rational(s) for s in obj["den"]])


def _normalize(n, d):
    if not d:
        raise DivisionByZero("zero denominator")
    if not n:
        return (), (_ONE,)
    if len(d) > 1 and len(n) > 0:
        g = _gcd(n, d)
        if len(g) > 1:
            n, _ = _divmod(n, g)
            d, _ = _divmod(d, g)
    lc = d[-1]
    if lc != 1:
        inv = _ONE / lc
        n = tuple(c * inv for c in n)
        d = tuple(c * inv for c in d)
    return n, d


def _rf_add(a, b):
    if not a.num:
        return b
    if not b.num:
        return a
    if a.den == b.den:
        n = _add(a.num, b.num)
        if len(a.den) == 1:
            return RatFunc._raw(n, a.den)
        if not n:
            return RatFunc._raw((), (_ONE,))
        return RatFunc._raw(*_normalize(n, a.den))
    if len(a.den) == 1:
        return RatFunc._raw(_add(_mul(a.num, b.den), b.num), b.den)
    if len(b.den) == 1:
        return RatFunc._raw(_add(a.num, _mul(b.num, a.den)), a.den)
    g = _gcd(a.den, b.den)
    if len(g) == 1:
        n = _add(_mul(a.num, b.den), _mul(b.num, a.den))
        d = _mul(a.den, b.den)
        # denominators coprime and each coprime to its numerator: result reduced
        return RatFunc._raw(n, d) if n else RatFunc._raw((), (_ONE,))
    ad, _ = _divmod(a.den, g)
    bd, _ = _divmod(b.den, g)
    n = _add(_mul(a.num, bd), _mul(b.num, ad))
    return RatFunc._raw(*_normalize(n, _mul(a.den, bd)))


def _rf_mul(a, b):
    if not a.num or not b.num:
        return RatFunc._raw((), (_ONE,))
    an, ad, bn, bd = a.num, a.den, b.num, b.den
    if len(ad) > 1 and len(bn) > 1:
        g = _gcd(bn, ad)
        if len(g) > 1:
            bn, _ = _divmod(bn, g)
            ad, _ = _divmod(ad, g)
    if len(bd) > 1 and len(an) > 1:
        g = _gcd(an, bd)
        if len(g) > 1:
            an, _ = _divmod(an, g)
            bd, _ = _divmod(bd, g)
    n = _mul(an, bn)
    d = _mul(ad, bd)
    if d[-1] != 1:
        inv = _ONE / d[-1]
        n = tuple(c * inv for c in n)
        d = tuple(c * inv for c in d)
    return RatFunc._raw(n, d)


# ---------------------------------------------------------------------------
# operations


def ratfunc_normalize(num, den) -> RatFunc:
    """Reduced, monic-denominator representative of ``num/den``."""
    return RatFunc(num, den)


def ratfunc_eval_zero(f: RatFunc) -> Fraction:
    """Value at the origin; raises :class:`PoleAtOrigin` if ``den(0) == 0``."""
    d0 = f.den[0] if f.den else _ZERO
    if not d0:
        raise PoleAtOrigin(f"{f} has a pole at 0")
    n0 = f.num[0] if f.num else _ZERO
    return n0 / d0


def _psi_power_substitute(coeffs, k):
    """Map ``sum c_i psi^i`` with all i divisible by k to ``sum c_i w^(i/k)``.

    Returns None when some exponent is not a multiple of k.
    """
    out = []
    for i, c in enumerate(coeffs):
        if c:
            if i % k:
                return None
            q = i // k
            out.extend([_ZERO] * (q + 1 - len(out)))
            out[q] = c
    return tuple(out)


def psi_to_z(f: RatFunc, k: int) -> RatFunc:
    """Rewrite a rational function of psi as one of ``z = psi**(-k)``.

    Both numerator and denominator must be psi^s times a polynomial in
    psi^k (possibly with different shifts).  ``psi^k = 1/z`` is then
    substituted and the result is checked by resubstitution.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if not f.num:
        return RatFunc._raw((), (_ONE,))

    def split(coeffs):
        s = next(i for i, c in enumerate(coeffs) if c)
        shifted = coeffs[s:]
        w = _psi_power_substitute(shifted, k)
        return s, w

    sn, wn = split(f.num)
    sd, wd = split(f.den)
    if wn is None or wd is None or (sn - sd) % k:
        raise NotInvariantUnderMuK(f"{f!r} is not a function of psi^{k}")
    shift = (sn - sd) // k  # f = w^shift * N(w)/D(w), w = psi^k
    # with w = 1/z:  N(1/z) = z^-dn * rev(N)(z)
    rn = tuple(reversed(wn))
    rd = tuple(reversed(wd))
    zpow = -shift - (len(wn) - 1) + (len(wd) - 1)
    num, den = rn, rd
    if zpow > 0:
        num = (_ZERO,) * zpow + num
    elif zpow < 0:
        den = (_ZERO,) * (-zpow) + den
    out = RatFunc(num, den)
    if z_to_psi(out, k) != f:
        raise NotInvariantUnderMuK(f"resubstitution check failed for {f!r}")
    return out


def z_to_psi(f: RatFunc, k: int) -> RatFunc:
    """Substitute ``z = psi**(-k)`` into a rational function of z."""

    def sub(coeffs):
        # sum c_i psi^(-k i) = psi^(-k n) * sum c_i psi^(k (n - i))
        n = len(coeffs) - 1
        out = [_ZERO] * (k * n + 1)
        for i, c in enumerate(coeffs):
            out[k * (n - i)] = c
        return tuple(out), n

    if not f.num:
        return f
    pn, nn = sub(f.num)
    pd, nd = sub(f.den)
    # f = psi^(-k nn) pn / (psi^(-k nd) pd)
    e = k * (nd - nn)
    if e >= 0:
        return RatFunc((_ZERO,) * e + pn, pd)
    return RatFunc(pn, (_ZERO,) * (-e) + pd)
