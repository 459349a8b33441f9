"""Exact coefficient arithmetic in the indeterminate q.

``LaurentPoly`` is a plain sparse map exponent -> Fraction.  ``RatFunc`` is an
element of Q(q); it keeps a reduced numerator/denominator pair of ordinary
polynomials (python-flint ``fmpq_poly``) so that gcds run in C.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import flint

__all__ = [
    "LaurentPoly",
    "RatFunc",
    "ZERO",
    "ONE",
    "Q",
    "qpow",
    "qnum",
    "qfact",
    "qbinom",
    "LinearSolution",
    "solve_linear",
    "row_reduce",
    "kernel_basis",
    "matrix_rank",
]


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


class LaurentPoly:
    """Finite sum of c_e q^e with rational c_e."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Fraction | int] | None = None):
        clean: dict[int, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[int(e)] = c
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def monomial(cls, e: int, c: Fraction | int = 1) -> "LaurentPoly":
        return cls({e: c})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other}) if other else LaurentPoly()
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(self.terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly | int | Fraction") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        out: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def bar(self) -> "LaurentPoly":
        """The involution q -> q^-1."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    @property
    def low(self) -> int:
        return next(iter(self.terms)) if self.terms else 0

    @property
    def high(self) -> int:
        return next(reversed(self.terms)) if self.terms else 0

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Divide exactly; raise ``ArithmeticError`` if a remainder is left."""
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        rem = dict(self.terms)
        quo: dict[int, Fraction] = {}
        top, lead = other.high, other.terms[other.high]
        floor = self.low - other.low
        while rem:
            e = max(rem)
            d = e - top
            if d < floor:
                raise ArithmeticError("inexact Laurent division")
            c = rem[e] / lead
            quo[d] = c
            for oe, oc in other.terms.items():
                k = oe + d
                v = rem.get(k, 0) - c * oc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly(quo)

    def __call__(self, x):
        return sum((c * x**e for e, c in self.terms.items()), Fraction(0))

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), reverse=True):
            if e == 0:
                body = _frac_str(abs(c))
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if abs(c) == 1 else f"{_frac_str(abs(c))}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def to_json(self) -> list[list[int]]:
        return [[e, c.numerator, c.denominator] for e, c in self.terms.items()]


# --- rational functions -----------------------------------------------------

_P = flint.fmpq_poly


@lru_cache(maxsize=None)
def _qk(k: int) -> flint.fmpq_poly:
    return _P([0] * k + [1])


def _valuation(p: flint.fmpq_poly) -> int:
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    return 0


class RatFunc:
    """Element of Q(q) kept as num/den with gcd 1 and monic den."""

    __slots__ = ("num", "den", "_h")

    def __init__(self, num: flint.fmpq_poly, den: flint.fmpq_poly | None = None, _reduced: bool = False):
        if den is None:
            den = _P(1)
        if not _reduced:
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            if num == 0:
                num, den = _P(0), _P(1)
            else:
                g = num.gcd(den)
                if g != 1:
                    num, den = num // g, den // g
                lc = den.coeffs()[-1]
                if lc != 1:
                    num, den = num / lc, den / lc
        self.num = num
        self.den = den
        self._h = None

    # constructors
    @classmethod
    def from_int(cls, n: int | Fraction) -> "RatFunc":
        return cls(_P([n]), _P(1), True)

    @classmethod
    def from_laurent(cls, p: LaurentPoly) -> "RatFunc":
        if not p:
            return ZERO
        lo = p.low
        coeffs = [Fraction(0)] * (p.high - lo + 1)
        for e, c in p.terms.items():
            coeffs[e - lo] = c
        num = _P([flint.fmpq(c.numerator, c.denominator) for c in coeffs])
        if lo >= 0:
            return cls(num * _qk(lo), _P(1), True)
        return cls(num, _qk(-lo), True)

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, LaurentPoly):
            return cls.from_laurent(x)
        if isinstance(x, (int, Fraction)):
            return cls.from_int(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    # predicates
    def __bool__(self) -> bool:
        return self.num != 0

    def is_one(self) -> bool:
        return self.den == 1 and self.num == 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatFunc):
            try:
                other = RatFunc.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._h is None:
            self._h = hash((str(self.num), str(self.den)))
        return self._h

    # arithmetic
    def __add__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            if not isinstance(other, _SCALARS):
                return NotImplemented
            other = RatFunc.coerce(other)
        if self.den == other.den:
            if self.den == 1:
                return RatFunc(self.num + other.num, self.den, True)
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, True)

    def __sub__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            if not isinstance(other, _SCALARS):
                return NotImplemented
            other = RatFunc.coerce(other)
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        if not isinstance(other, RatFunc):
            if not isinstance(other, _SCALARS):
                return NotImplemented
            other = RatFunc.coerce(other)
        if self.den == 1 and other.den == 1:
            return RatFunc(self.num * other.num, self.den, True)
        # cross-cancel keeps the operands small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n = (self.num // g1) * (other.num // g2)
        d = (self.den // g2) * (other.den // g1)
        if n == 0:
            return ZERO
        lc = d.coeffs()[-1]
        if lc != 1:
            n, d = n / lc, d / lc
        return RatFunc(n, d, True)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> "RatFunc":
        return self * RatFunc.coerce(other).inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return RatFunc.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num**n, self.den**n, True)

    def size(self) -> int:
        """Crude expression size used for pivot selection."""
        return self.num.degree() + self.den.degree() + 2

    # Laurent views
    def numerator(self) -> LaurentPoly:
        v = _valuation(self.den)
        lc = Fraction(str(self.den.coeffs()[-1]))
        sgn = 1 if lc > 0 else -1
        return LaurentPoly({i - v: Fraction(str(c)) * sgn for i, c in enumerate(self.num.coeffs()) if c != 0})

    def denominator(self) -> LaurentPoly:
        v = _valuation(self.den)
        return LaurentPoly({i - v: Fraction(str(c)) for i, c in enumerate(self.den.coeffs()) if c != 0})

    def is_laurent(self) -> bool:
        return self.den == _qk(self.den.degree())

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        k = self.den.degree()
        return LaurentPoly({i - k: Fraction(str(c)) for i, c in enumerate(self.num.coeffs()) if c != 0})

    def monomial_exponent(self) -> int | None:
        """Return m if self == q^m exactly, else None."""
        if not self.is_laurent():
            return None
        lp = self.as_laurent()
        if len(lp.terms) == 1:
            ((e, c),) = lp.terms.items()
            if c == 1:
                return e
        return None

    def bar(self) -> "RatFunc":
        return RatFunc.from_laurent(self.numerator().bar()) / RatFunc.from_laurent(self.denominator().bar())

    def __str__(self) -> str:
        if self.is_laurent():
            return str(self.as_laurent())
        return f"({self.numerator()})/({self.denominator()})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def to_json(self) -> dict:
        return {"num": self.numerator().to_json(), "den": self.denominator().to_json()}


_SCALARS = (int, Fraction, LaurentPoly)

ZERO = RatFunc(_P(0), _P(1), True)
ONE = RatFunc(_P(1), _P(1), True)
Q = RatFunc(_P([0, 1]), _P(1), True)


@lru_cache(maxsize=None)
def qpow(e: int) -> RatFunc:
    """q^e as a RatFunc."""
    if e >= 0:
        return RatFunc(_qk(e), _P(1), True)
    return RatFunc(_P(1), _qk(-e), True)


# --- q-combinatorics ------------------------------------------------------


@lru_cache(maxsize=None)
def qnum(n: int, d: int = 1) -> LaurentPoly:
    """[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})."""
    if n == 0:
        return LaurentPoly()
    if n < 0:
        return -qnum(-n, d)
    return LaurentPoly({d * (n - 1 - 2 * k): 1 for k in range(n)})


@lru_cache(maxsize=None)
def qfact(n: int, d: int = 1) -> LaurentPoly:
    if n < 0:
        raise ValueError("factorial of a negative integer")
    out = LaurentPoly({0: 1})
    for k in range(1, n + 1):
        out = out * qnum(k, d)
    return out


@lru_cache(maxsize=None)
def qbinom(n: int, m: int, d: int = 1) -> LaurentPoly:
    if not 0 <= m <= n:
        raise ValueError("need 0 <= m <= n")
    return qfact(n, d).exact_div(qfact(m, d) * qfact(n - m, d))


# --- linear algebra over Q(q) ---------------------------------------------


class LinearSolution:
    """Outcome of ``solve_linear``: a particular solution (or None), rank, kernel."""

    def __init__(self, solution, rank: int, kernel: list[list[RatFunc]], consistent: bool):
        self.solution = solution
        self.rank = rank
        self.kernel = kernel
        self.consistent = consistent

    def __repr__(self) -> str:
        return f"LinearSolution(rank={self.rank}, consistent={self.consistent}, kernel_dim={len(self.kernel)})"


def row_reduce(rows: Sequence[Sequence[RatFunc]], ncols: int) -> tuple[list[list[RatFunc]], list[int]]:
    """Reduced row echelon form; pivots picked by smallest expression size."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        best = None
        for i in range(r, len(m)):
            x = m[i][c]
            if x and (best is None or x.size() < m[best][c].size()):
                best = i
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        inv = m[r][c].inverse()
        if not inv.is_one():
            m[r] = [x * inv if x else x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                pr = m[r]
                m[i] = [a - f * b if b else a for a, b in zip(m[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def kernel_basis(rows: Sequence[Sequence[RatFunc]], ncols: int) -> list[list[RatFunc]]:
    """Basis of {x : A x = 0}, one vector per free column."""
    red, piv = row_reduce(rows, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    out = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, piv):
            if row[f]:
                v[p] = -row[f]
        out.append(v)
    return out


def matrix_rank(rows: Sequence[Sequence[RatFunc]], ncols: int) -> int:
    return len(row_reduce(rows, ncols)[1])


def solve_linear(A: Sequence[Sequence], b: Sequence | None = None) -> LinearSolution:
    """Solve A x = b exactly over Q(q).

    Entries may be ints, Fractions, LaurentPolys or RatFuncs.  Inconsistent
    systems are reported through ``consistent=False`` rather than raised.
    """
    A = [[RatFunc.coerce(x) for x in row] for row in A]
    ncols = len(A[0]) if A else 0
    if b is None:
        b = [ZERO] * len(A)
    b = [RatFunc.coerce(x) for x in b]
    aug = [row + [bi] for row, bi in zip(A, b)]
    red, piv = row_reduce(aug, ncols + 1)
    consistent = ncols not in piv
    rank = len([p for p in piv if p < ncols])
    sol = None
    if consistent:
        sol = [ZERO] * ncols
        for row, p in zip(red, piv):
            sol[p] = row[ncols]
    kern = kernel_basis(A, ncols)
    return LinearSolution(sol, rank, kern, consistent)

