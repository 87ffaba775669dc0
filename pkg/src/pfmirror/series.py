"""Truncated power series over Q and series solutions of ``theta w = A w``.

A :class:`PowerSeries` keeps exactly ``order`` coefficients.  It also keeps
``valid``, the number of leading coefficients that are known to be exact:
differentiation loses the top one, and binary operations take the minimum.
Reading past ``valid`` raises :class:`OrderExhausted` instead of returning
a silently truncated value.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import RatFunc, as_rational

_ZERO = Fraction(0)
_ONE = Fraction(1)


class NotAUnit(ArithmeticError):
    pass


class BadConstantTerm(ArithmeticError):
    pass


class OrderExhausted(IndexError):
    pass


class NoRegularSolution(ArithmeticError):
    pass


class NoSolution(ArithmeticError):
    pass


class PowerSeries:
    __slots__ = ("coeffs", "valid")

    def __init__(self, coeffs, order=None, valid=None):
        c = [as_rational(x) for x in coeffs]
        if order is None:
            order = len(c)
        c = (c + [_ZERO] * order)[:order]
        self.coeffs = tuple(c)
        self.valid = order if valid is None else min(valid, order)

    @classmethod
    def _raw(cls, coeffs, valid):
        s = object.__new__(cls)
        s.coeffs = coeffs
        s.valid = valid
        return s

    @classmethod
    def zero(cls, order):
        return cls._raw((_ZERO,) * order, order)

    @classmethod
    def one(cls, order):
        return cls.constant(1, order)

    @classmethod
    def constant(cls, c, order):
        return cls([c], order)

    @classmethod
    def variable(cls, order):
        return cls([0, 1], order)

    @classmethod
    def from_ratfunc(cls, f: RatFunc, order: int):
        """Taylor expansion at 0; the denominator must be a unit there."""
        num = cls(f.num, order)
        den = cls(f.den, order)
        return num * den.reciprocal()

    @property
    def order(self):
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        if isinstance(i, slice):
            idx = range(*i.indices(self.order))
            return [self[j] for j in idx]
        if i < 0:
            raise IndexError("negative index")
        if i >= self.valid:
            raise OrderExhausted(f"coefficient {i} requested, series exact only through {self.valid - 1}")
        return self.coeffs[i]

    def exact_coeffs(self):
        return list(self.coeffs[: self.valid])

    def __eq__(self, other):
        if isinstance(other, PowerSeries):
            n = min(self.valid, other.valid)
            return self.coeffs[:n] == other.coeffs[:n]
        return NotImplemented

    def _match(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries.constant(other, self.order)
        if other.order != self.order:
            raise ValueError(f"series orders differ: {self.order} vs {other.order}")
        return other

    def __add__(self, other):
        other = self._match(other)
        return PowerSeries._raw(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), min(self.valid, other.valid)
        )

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries._raw(tuple(-a for a in self.coeffs), self.valid)

    def __sub__(self, other):
        return self + (-self._match(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            c = as_rational(other)
            return PowerSeries._raw(tuple(a * c for a in self.coeffs), self.valid)
        other = self._match(other)
        n = self.order
        a, b = self.coeffs, other.coeffs
        out = [_ZERO] * n
        for i in range(n):
            ai = a[i]
            if ai:
                for j in range(n - i):
                    out[i + j] += ai * b[j]
        return PowerSeries._raw(tuple(out), min(self.valid, other.valid))

    __rmul__ = __mul__

    def __pow__(self, m):
        if m < 0:
            return self.reciprocal() ** (-m)
        out = PowerSeries.one(self.order)
        for _ in range(m):
            out = out * self
        return out

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            return self * other.reciprocal()
        return self * (_ONE / as_rational(other))

    def reciprocal(self):
        a = self.coeffs
        if not a or not a[0]:
            raise NotAUnit("reciprocal of a series with zero constant term")
        n = self.order
        inv0 = _ONE / a[0]
        out = [inv0] + [_ZERO] * (n - 1)
        for m in range(1, n):
            acc = _ZERO
            for i in range(1, m + 1):
                if a[i]:
                    acc += a[i] * out[m - i]
            out[m] = -acc * inv0
        return PowerSeries._raw(tuple(out), self.valid)

    def derivative(self):
        """d/dz; the top coefficient is stored as zero and is not exact."""
        a = self.coeffs
        out = tuple(i * a[i] for i in range(1, len(a))) + (_ZERO,)
        return PowerSeries._raw(out, max(self.valid - 1, 0))

    def theta(self):
        """z d/dz; keeps the full exact length."""
        return PowerSeries._raw(tuple(i * c for i, c in enumerate(self.coeffs)), self.valid)

    def integral(self):
        """Antiderivative with zero constant term (drops the top coefficient)."""
        a = self.coeffs
        out = (_ZERO,) + tuple(a[i] / (i + 1) for i in range(len(a) - 1))
        return PowerSeries._raw(out, self.valid)

    def exp(self):
        a = self.coeffs
        if a and a[0]:
            raise BadConstantTerm("exp needs a zero constant term")
        n = self.order
        # f' = a' f  =>  m f_m = sum_{i=1..m} i a_i f_{m-i}
        out = [_ONE] + [_ZERO] * (n - 1)
        for m in range(1, n):
            acc = _ZERO
            for i in range(1, m + 1):
                if a[i]:
                    acc += i * a[i] * out[m - i]
            out[m] = acc / m
        return PowerSeries._raw(tuple(out), self.valid)

    def log(self):
        a = self.coeffs
        if not a or a[0] != 1:
            raise BadConstantTerm("log needs constant term 1")
        # (log a)' = a'/a, recomputed termwise to keep the full exact length
        n = self.order
        out = [_ZERO] * n
        for m in range(1, n):
            acc = m * a[m]
            for i in range(1, m):
                acc -= i * out[i] * a[m - i]
            out[m] = acc / m
        return PowerSeries._raw(tuple(out), self.valid)

    def __call__(self, x):
        x = as_rational(x)
        acc = _ZERO
        for c in reversed(self.coeffs[: self.valid]):
            acc = acc * x + c
        return acc

    def to_json(self):
        return [str(c) for c in self.exact_coeffs()]

    @classmethod
    def from_json(cls, items, order=None):
        return cls([Fraction(s) for s in items], order)

    def __repr__(self):
        shown = ", ".join(str(c) for c in self.coeffs[: min(6, self.valid)])
        return f"PowerSeries([{shown}, ...], order={self.order}, valid={self.valid})"


def series_arith(a: PowerSeries, b, op: str) -> PowerSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "reciprocal":
        return a.reciprocal()
    if op == "derivative":
        return a.derivative()
    if op == "theta":
        return a.theta()
    raise ValueError(f"unknown op {op!r}")


def series_exp_log(a: PowerSeries, op: str) -> PowerSeries:
    if op == "exp":
        return a.exp()
    if op == "log":
        return a.log()
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# linear systems


class SeriesVector(list):
    """Equal-order power series, one per coordinate."""

    def __init__(self, items):
        super().__init__(items)
        if len({s.order for s in self}) > 1:
            raise ValueError("components have different orders")

    @property
    def order(self):
        return self[0].order


def matrix_taylor(A, order):
    """Split a matrix of rational functions into coefficient matrices A_0..A_{N-1}."""
    n = len(A)
    entries = [[PowerSeries.from_ratfunc(f if isinstance(f, RatFunc) else RatFunc.constant(f), order) for f in row] for row in A]
    return [[[entries[i][j].coeffs[m] for j in range(n)] for i in range(n)] for m in range(order)]


def _solve(M, b):
    """Solve M x = b exactly; free variables are set to zero.  None if inconsistent."""
    rows = len(M)
    cols = len(M[0])
    aug = [list(M[i]) + [b[i]] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = _ONE / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if aug[i][cols]:
            return None
    x = [_ZERO] * cols
    for i, c in enumerate(pivots):
        x[c] = aug[i][cols]
    return x


def _rank(M):
    rows = [list(r) for r in M]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        p = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _is_nilpotent(M):
    n = len(M)
    P = [row[:] for row in M]
    for _ in range(n - 1):
        P = [[sum((P[i][t] * M[t][j] for t in range(n)), _ZERO) for j in range(n)] for i in range(n)]
    return not any(any(r) for r in P)


def _recurse(taylor, order, v0, forcing=None):
    """Coefficients of theta v = A v - forcing, given v_0."""
    n = len(v0)
    coeffs = [list(v0)]
    A0 = taylor[0]
    for m in range(1, order):
        rhs = [_ZERO] * n
        for i in range(1, m + 1):
            Ai = taylor[i]
            prev = coeffs[m - i]
            for r in range(n):
                row = Ai[r]
                acc = _ZERO
                for c in range(n):
                    if row[c] and prev[c]:
                        acc += row[c] * prev[c]
                rhs[r] += acc
        if forcing is not None:
            rhs = [x - f for x, f in zip(rhs, forcing[m])]
        M = [[(m if r == c else 0) - A0[r][c] for c in range(n)] for r in range(n)]
        x = _solve(M, rhs)
        if x is None:
            raise NoSolution(f"singular recursion at order {m}")
        coeffs.append(x)
    return SeriesVector(PowerSeries([coeffs[m][r] for m in range(order)], order) for r in range(n))


def solve_homogeneous(A, order: int, scale=1) -> SeriesVector:
    """The solution of ``theta w = A w`` regular at 0 with ``w(0) = scale * e1``."""
    taylor = matrix_taylor(A, order)
    A0 = taylor[0]
    n = len(A0)
    if not _is_nilpotent(A0):
        raise NoRegularSolution("A(0) is not nilpotent")
    if n - _rank(A0) != 1 or any(A0[r][0] for r in range(n)):
        raise NoRegularSolution("kernel of A(0) is not spanned by e1")
    v0 = [as_rational(scale)] + [_ZERO] * (n - 1)
    return _recurse(taylor, order, v0)


def solve_inhomogeneous(A, w0: SeriesVector, order: int) -> SeriesVector:
    """The solution of ``theta v = A v - w0`` with first component vanishing at 0."""
    taylor = matrix_taylor(A, order)
    A0 = taylor[0]
    n = len(A0)
    forcing = [[w0[r].coeffs[m] for r in range(n)] for m in range(order)]
    # A0 v0 = w0(0) together with v0[0] = 0
    M = [list(row) for row in A0] + [[_ONE] + [_ZERO] * (n - 1)]
    v0 = _solve(M, forcing[0] + [_ZERO])
    if v0 is None:
        raise NoSolution("A(0) v = w0(0) has no solution with vanishing first component")
    return _recurse(taylor, order, v0, forcing)


def apply_log_operator(B, f: PowerSeries) -> PowerSeries:
    """``theta^s f + sum_j B_j theta^j f`` for the coefficient list ``B``."""
    order = f.order
    powers = [f]
    for _ in range(len(B)):
        powers.append(powers[-1].theta())
    out = powers[len(B)]
    for j, b in enumerate(B):
        out = out + PowerSeries.from_ratfunc(b, order) * powers[j]
    return out


def system_residual(A, w: SeriesVector, forcing: SeriesVector = None) -> SeriesVector:
    """``theta w - A w (+ forcing)``, which vanishes for an exact solution."""
    order = w.order
    n = len(w)
    entries = [[PowerSeries.from_ratfunc(f, order) for f in row] for row in A]
    out = []
    for r in range(n):
        acc = w[r].theta()
        for c in range(n):
            acc = acc - entries[r][c] * w[c]
        if forcing is not None:
            acc = acc + forcing[r]
        out.append(acc)
    return SeriesVector(out)
