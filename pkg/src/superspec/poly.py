"""Exact univariate polynomials and rational functions over the rationals.

Coefficients are stored constant term first.  Integral coefficients are kept
as plain ``int`` so that characteristic polynomials stay big-integer valued;
anything else is a ``fractions.Fraction``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]

MINUS = "−"


def _norm(c) -> Number:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class Polynomial:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coefficients: Iterable[Number] = ()):
        c = [_norm(x) for x in coefficients]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    # construction -------------------------------------------------------

    @classmethod
    def constant(cls, a: Number) -> Polynomial:
        return cls([a])

    @classmethod
    def x(cls) -> Polynomial:
        return cls([0, 1])

    @classmethod
    def linear(cls, root: Number) -> Polynomial:
        """The monic factor ``x - root``."""
        return cls([-root, 1])

    @classmethod
    def monomial(cls, degree: int, coefficient: Number = 1) -> Polynomial:
        return cls([0] * degree + [coefficient])

    # basic properties ---------------------------------------------------

    @property
    def coefficients(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self._c) - 1

    @property
    def leading(self) -> Number:
        return self._c[-1] if self._c else 0

    def is_zero(self) -> bool:
        return not self._c

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._c)

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == 1

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __getitem__(self, k: int) -> Number:
        return self._c[k] if 0 <= k < len(self._c) else 0

    def __hash__(self) -> int:
        return hash(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Polynomial([other])._c
        return NotImplemented

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Polynomial:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other])
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other) -> Polynomial:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial([-x for x in self._c])

    def __sub__(self, other) -> Polynomial:
        try:
            return self + (-self._coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not self._c or not o._c:
            return Polynomial()
        out = [0] * (len(self._c) + len(o._c) - 1)
        for i, x in enumerate(self._c):
            if x == 0:
                continue
            for j, y in enumerate(o._c):
                out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative exponent")
        result = Polynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, divisor: Polynomial) -> tuple[Polynomial, Polynomial]:
        """Euclidean division over the rationals."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dd = divisor.degree
        lc = divisor.leading
        if len(rem) - 1 < dd:
            return Polynomial(), self
        quot = [0] * (len(rem) - dd)
        for k in range(len(rem) - 1 - dd, -1, -1):
            coef = rem[k + dd]
            if coef == 0:
                continue
            q = Fraction(coef, lc) if isinstance(lc, int) and isinstance(coef, int) else coef / lc
            q = _norm(q)
            quot[k] = q
            for i, dc in enumerate(divisor._c):
                rem[k + i] -= q * dc
        return Polynomial(quot), Polynomial(rem[:dd])

    def __floordiv__(self, other) -> Polynomial:
        return self.divmod(other)[0]

    def __mod__(self, other) -> Polynomial:
        return self.divmod(other)[1]

    def exact_div(self, other) -> Polynomial:
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    # evaluation and calculus -------------------------------------------

    def __call__(self, t):
        acc = 0
        for c in reversed(self._c):
            acc = acc * t + c
        return acc

    def derivative(self) -> Polynomial:
        return Polynomial([i * c for i, c in enumerate(self._c)][1:])

    def sign_at(self, t: Number) -> int:
        v = self(t)
        return (v > 0) - (v < 0)

    # normal forms -------------------------------------------------------

    def content(self) -> Fraction:
        """Positive rational ``c`` with ``self / c`` primitive and integral."""
        if not self._c:
            return Fraction(1)
        den = reduce(lcm, (Fraction(c).denominator for c in self._c), 1)
        nums = [int(c * den) for c in self._c]
        g = reduce(gcd, nums, 0)
        return Fraction(g, den)

    def primitive(self) -> Polynomial:
        """Integral primitive associate with positive leading coefficient."""
        if not self._c:
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return Polynomial([_norm(x / c) for x in self._c])

    def monic(self) -> Polynomial:
        if not self._c:
            return self
        lc = self.leading
        return Polynomial([Fraction(x) / lc for x in self._c])

    def trailing_zeros(self) -> int:
        k = 0
        while k < len(self._c) and self._c[k] == 0:
            k += 1
        return k

    # display and serialization -----------------------------------------

    def pretty(self, var: str = "λ") -> str:
        if not self._c:
            return "0"
        parts: list[str] = []
        for k in range(len(self._c) - 1, -1, -1):
            c = self._c[k]
            if c == 0:
                continue
            neg = c < 0
            mag = -c if neg else c
            if k == 0:
                body = str(mag)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                if mag == 1:
                    body = mono
                elif isinstance(mag, Fraction):
                    body = f"({mag}){mono}"
                else:
                    body = f"{mag}{mono}"
            if not parts:
                parts.append((MINUS if neg else "") + body)
            else:
                parts.append(f"{MINUS if neg else '+'} {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.pretty()

    def __repr__(self) -> str:
        return f"Polynomial({list(self._c)!r})"

    def to_strings(self) -> list[str]:
        return [str(c) for c in self._c]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> Polynomial:
        return cls([Fraction(s) for s in items])

    def to_json(self) -> str:
        return json.dumps(self.to_strings())

    @classmethod
    def from_json(cls, text: str) -> Polynomial:
        return cls.from_strings(json.loads(text))


ONE = Polynomial([1])
ZERO = Polynomial()
X = Polynomial.x()


def poly_product(factors: Iterable[tuple[Polynomial, int]]) -> Polynomial:
    out = ONE
    for p, m in factors:
        out = out * p ** m
    return out


def _prem(a: Polynomial, b: Polynomial) -> Polynomial:
    # pseudo-remainder, integral for integral input
    d = a.degree - b.degree + 1
    q, r = (a * (b.leading ** d)).divmod(b)
    return r


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over the rationals (primitive remainder sequence)."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    a, b = a.primitive(), b.primitive()
    if a.degree < b.degree:
        a, b = b, a
    while b:
        r = _prem(a, b)
        a, b = b, (r.primitive() if r else r)
    return a.monic()


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: monic squarefree factors with multiplicities.

    The product of ``f**m`` over the result equals ``p.monic()``.  Constant
    factors are dropped.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree decomposition")
    p = p.monic()
    if p.degree == 0:
        return []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p.exact_div(a)
    c = dp.exact_div(a) if a.degree > 0 else dp
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a.monic(), i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


class RationalFunction:
    """Reduced quotient of polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, numerator, denominator=None):
        if isinstance(numerator, RationalFunction) and denominator is None:
            self.num, self.den = numerator.num, numerator.den
            return
        num = Polynomial._coerce(numerator)
        den = ONE if denominator is None else Polynomial._coerce(denominator)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = ZERO, ONE
        elif den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lc = den.leading
        if lc != 1:
            num = Polynomial([Fraction(c) / lc for c in num.coefficients])
            den = den.monic()
        self.num = num
        self.den = den

    @staticmethod
    def _coerce(other) -> RationalFunction:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (Polynomial, int, Fraction)):
            return RationalFunction(other)
        raise TypeError(f"cannot combine RationalFunction with {type(other).__name__}")

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def to_polynomial(self) -> Polynomial:
        if not self.is_polynomial():
            raise ArithmeticError(f"{self} is not a polynomial")
        return self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other) -> RationalFunction:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> RationalFunction:
        try:
            return self + (-self._coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other) -> RationalFunction:
        return (-self) + other

    def __mul__(self, other) -> RationalFunction:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunction:
        o = self._coerce(other)
        if not o:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> RationalFunction:
        return self._coerce(other) / self

    def __call__(self, t):
        return self.num(t) / self.den(t)

    def pretty(self, var: str = "λ") -> str:
        if self.is_polynomial():
            return self.num.pretty(var)
        return f"({self.num.pretty(var)}) / ({self.den.pretty(var)})"

    __str__ = pretty

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"
