"""Integer Laurent polynomials in one indeterminate."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping


class LaurentPoly:
    """Sparse Laurent polynomial with integer coefficients, ``{exponent: coeff}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def qnumber(cls, n: int) -> "LaurentPoly":
        """[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
        if n == 0:
            return cls()
        sign = 1 if n > 0 else -1
        n = abs(n)
        return cls({n - 1 - 2 * j: sign for j in range(n)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    @property
    def low(self) -> int:
        return min(self.terms)

    @property
    def high(self) -> int:
        return max(self.terms)

    @property
    def span(self) -> int:
        """Degree of the ordinary polynomial q^(-low) * self."""
        return self.high - self.low if self.terms else 0

    def coeff(self, e: int) -> int:
        return self.terms.get(e, 0)

    def shifted(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e + k: c for e, c in self.terms.items()})

    def divmod(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Polynomial division after normalizing both lowest exponents to 0.

        The quotient is shifted back so that ``self == q*other + r`` holds
        whenever the remainder is zero.
        """
        if not other:
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        a = [Fraction(self.coeff(e)) for e in range(self.low, self.high + 1)] if self else []
        b = [Fraction(other.coeff(e)) for e in range(other.low, other.high + 1)]
        db = len(b) - 1
        quot: dict[int, Fraction] = {}
        for k in range(len(a) - 1, db - 1, -1):
            c = a[k]
            if c:
                f = c / b[-1]
                quot[k - db] = f
                for i in range(db + 1):
                    a[k - db + i] -= f * b[i]
        shift = (self.low if self else 0) - other.low
        rem = {i + (self.low if self else 0): v for i, v in enumerate(a) if v}
        if any(v.denominator != 1 for v in list(quot.values()) + list(rem.values())):
            raise ArithmeticError("division leaves the integers")
        q = LaurentPoly({e + shift: int(v) for e, v in quot.items()})
        r = LaurentPoly({e: int(v) for e, v in rem.items()})
        return q, r

    def as_poly(self) -> list[int]:
        """Coefficients of q^(-low) * self, lowest degree first."""
        if not self.terms:
            return [0]
        return [self.coeff(e) for e in range(self.low, self.high + 1)]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if mono and abs(c) == 1:
                parts.append(("-" if c < 0 else "+") + mono)
            else:
                parts.append(f"{c:+d}" + mono)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Primitive gcd (up to a unit and a monomial) of two Laurent polynomials."""
    x = [Fraction(c) for c in a.as_poly()]
    y = [Fraction(c) for c in b.as_poly()]

    def trim(p):
        while p and p[-1] == 0:
            p.pop()
        return p

    x, y = trim(x), trim(y)
    while y:
        r = list(x)
        while len(r) >= len(y) and any(r):
            f = r[-1] / y[-1]
            off = len(r) - len(y)
            for i, c in enumerate(y):
                r[off + i] -= f * c
            r = trim(r)
        x, y = y, r
    if not x:
        return LaurentPoly()
    from math import gcd, lcm

    den = 1
    for c in x:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in x]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return LaurentPoly({i: c for i, c in enumerate(ints)})
