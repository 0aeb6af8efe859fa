"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is stored in the power basis 1, z, ..., z^(phi(N)-1) of
Q(zeta_N) reduced modulo the N-th cyclotomic polynomial.  Internally the
coefficients are kept as integer numerators over one common positive
denominator; :attr:`CycloNumber.coeffs` exposes them as ``Fraction``.

The principal embedding sends zeta_N to exp(2*pi*i/N).
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "CycloNumber",
    "cyclotomic_polynomial",
    "totient",
    "divisors",
    "prime_factors",
    "make_root_of_unity",
    "add",
    "mul",
    "neg",
    "inv",
    "is_rational",
    "root_of_unity_order",
    "galois_apply",
    "embed_complex",
]


# ---------------------------------------------------------------------------
# integer helpers


@lru_cache(maxsize=None)
def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of ``n`` in increasing order."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return tuple(out)


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return tuple(small + large[::-1])


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    result = n
    for p in prime_factors(n):
        result -= result // p
    return result


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


# ---------------------------------------------------------------------------
# integer polynomials (lists, lowest degree first)


def _poly_exact_div(num: list[int], den: Sequence[int]) -> list[int]:
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    out = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c == 0:
            continue
        q, r = divmod(c, lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[k - dn] = q
        for i in range(dn + 1):
            num[k - dn + i] -= q * den[i]
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first.

    Built as (x^n - 1) / prod_{d | n, d < n} Phi_d.  The memo table is an
    ``lru_cache`` and therefore safe under concurrent use.
    """
    if n < 1:
        raise ValueError("cyclotomic polynomial needs n >= 1")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in divisors(n)[:-1]:
        poly = _poly_exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _reduce_poly(poly: Sequence[int], n: int) -> list[int]:
    """Reduce an integer polynomial modulo Phi_n; result has length phi(n)."""
    deg = totient(n)
    if len(poly) > n:
        folded = [0] * n
        for i, c in enumerate(poly):
            if c:
                folded[i % n] += c
        poly = folded
    else:
        poly = list(poly)
    if len(poly) <= deg:
        return poly + [0] * (deg - len(poly))
    phi = cyclotomic_polynomial(n)
    for k in range(len(poly) - 1, deg - 1, -1):
        c = poly[k]
        if c:
            base = k - deg
            for i in range(deg):
                if phi[i]:
                    poly[base + i] -= c * phi[i]
            poly[k] = 0
    return poly[:deg]


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = den
    for c in num:
        if c:
            g = math.gcd(g, c)
            if g == 1:
                break
    if not any(num):
        return tuple(0 for _ in num), 1
    if g != 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


def _mul_polys(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


# ---------------------------------------------------------------------------
# rational polynomial helpers for inversion


def _frac_poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _frac_poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    db = len(b) - 1
    inv_lead = 1 / b[-1]
    quot = [Fraction(0)] * max(len(a) - db, 1)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            f = c * inv_lead
            quot[k - db] = f
            for i in range(db + 1):
                a[k - db + i] -= f * b[i]
    return _frac_poly_trim(quot), _frac_poly_trim(a[:db] if db else [])


def _frac_poly_sub_mul(x: list[Fraction], q: list[Fraction], y: list[Fraction]) -> list[Fraction]:
    # x - q*y
    prod = [Fraction(0)] * (len(q) + len(y) - 1) if q and y else []
    for i, c in enumerate(q):
        if c:
            for j, d in enumerate(y):
                if d:
                    prod[i + j] += c * d
    n = max(len(x), len(prod))
    out = [Fraction(0)] * n
    for i, c in enumerate(x):
        out[i] += c
    for i, c in enumerate(prod):
        out[i] -= c
    return _frac_poly_trim(out)


# ---------------------------------------------------------------------------


class CycloNumber:
    """Immutable element of Q(zeta_N).

    >>> z = make_root_of_unity(3, 1)
    >>> z + z * z
    CycloNumber(1, [-1])
    """

    __slots__ = ("_n", "_num", "_den", "_hash")

    def __init__(self, conductor: int, coeffs: Iterable):
        """Build ``sum(c_i * zeta_N**i)``; ``coeffs`` may have any length."""
        if conductor < 1:
            raise ValueError("conductor must be positive")
        fr = [Fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = _lcm(den, c.denominator)
        num = [int(c * den) for c in fr] or [0]
        num, den = _normalize(_reduce_poly(num, conductor), den)
        self._n = conductor
        self._num = num
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, n: int, num, den: int) -> "CycloNumber":
        self = object.__new__(cls)
        self._n = n
        self._num, self._den = _normalize(list(num), den)
        self._hash = None
        return self

    @classmethod
    def rational(cls, r) -> "CycloNumber":
        r = Fraction(r)
        return cls._raw(1, [r.numerator], r.denominator)

    # -- accessors ---------------------------------------------------------

    @property
    def conductor(self) -> int:
        return self._n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def is_zero(self) -> bool:
        return not any(self._num)

    # -- conductor handling -----------------------------------------------

    def lift(self, conductor: int) -> "CycloNumber":
        """Re-express in Q(zeta_conductor); ``conductor`` must be a multiple."""
        if conductor % self._n:
            raise ValueError(f"{conductor} is not a multiple of {self._n}")
        if conductor == self._n:
            return self
        return CycloNumber._raw(conductor, self._lifted_num(conductor), self._den)

    def _lifted_num(self, conductor: int) -> list[int]:
        if conductor == self._n:
            return list(self._num)
        step = conductor // self._n
        poly = [0] * ((len(self._num) - 1) * step + 1)
        for i, c in enumerate(self._num):
            poly[i * step] = c
        return _reduce_poly(poly, conductor)

    def reduced(self) -> "CycloNumber":
        """Same value expressed over the smallest possible conductor."""
        n, num = _minimal_conductor(self._n, list(self._num))
        if n == self._n:
            return self
        return CycloNumber._raw(n, num, self._den)

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "CycloNumber | None":
        if isinstance(other, CycloNumber):
            return other
        if isinstance(other, (int, Rational)):
            return CycloNumber.rational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _combine(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _combine(self, other, -1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return _combine(other, self, -1)

    def __neg__(self):
        return CycloNumber._raw(self._n, [-c for c in self._num], self._den)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self, other
        if a._n == b._n:
            n = a._n
            prod = _mul_polys(a._num, b._num)
            return CycloNumber._raw(n, _reduce_poly(prod, n), a._den * b._den)
        if b._n == 1:
            return CycloNumber._raw(a._n, [c * b._num[0] for c in a._num], a._den * b._den)
        if a._n == 1:
            return CycloNumber._raw(b._n, [c * a._num[0] for c in b._num], a._den * b._den)
        n = _lcm(a._n, b._n)
        prod = _mul_polys(a._lifted_num(n), b._lifted_num(n))
        return CycloNumber._raw(n, _reduce_poly(prod, n), a._den * b._den).reduced()

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        n = self._n
        if n <= 2:
            return CycloNumber.rational(Fraction(self._den, self._num[0]))
        nz = [i for i, c in enumerate(self._num) if c]
        if len(nz) == 1:
            # monomial c*z^k: inverse is z^(n-k)/c
            k = nz[0]
            c = self._num[k]
            poly = [0] * (n - k + 1)
            poly[(n - k) % n] = self._den
            return CycloNumber._raw(n, _reduce_poly(poly, n), c)
        # elements of modulus one (roots of unity in particular)
        conj = self.conjugate()
        if self * conj == 1:
            return conj
        a = _frac_poly_trim([Fraction(c) for c in self._num])
        m = [Fraction(c) for c in cyclotomic_polynomial(n)]
        # invariant: t_i * a == r_i  (mod Phi_n)
        r0, r1 = m, a
        t0, t1 = [], [Fraction(1)]
        while len(r1) > 1:
            quo, rem = _frac_poly_divmod(r0, r1)
            r0, r1 = r1, rem
            t0, t1 = t1, _frac_poly_sub_mul(t0, quo, t1)
        g = r1[0]
        coeffs = [c / g for c in t1]
        den = 1
        for c in coeffs:
            den = _lcm(den, c.denominator)
        num = [int(c * den) for c in coeffs]
        # t1 is in terms of a = num/den of self; rescale by self's denominator
        num = [c * self._den for c in num]
        return CycloNumber._raw(n, _reduce_poly(num, n), den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        result = CycloNumber.rational(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self._n == other._n:
            return self._num == other._num and self._den == other._den
        if self._den != other._den:
            return False
        n = _lcm(self._n, other._n)
        return self._lifted_num(n) == other._lifted_num(n)

    def __hash__(self):
        if self._hash is None:
            r = self.reduced()
            self._hash = hash((r._n, r._num, r._den))
        return self._hash

    # -- structure ---------------------------------------------------------

    def is_rational(self) -> Fraction | None:
        if any(self._num[1:]):
            return None
        return Fraction(self._num[0], self._den)

    def galois(self, j: int) -> "CycloNumber":
        """Apply the automorphism zeta_N -> zeta_N**j."""
        n = self._n
        if math.gcd(j, n) != 1:
            raise ValueError(f"exponent {j} is not coprime to conductor {n}")
        j %= n
        poly = [0] * n
        for i, c in enumerate(self._num):
            if c:
                poly[(i * j) % n] += c
        return CycloNumber._raw(n, _reduce_poly(poly, n), self._den)

    def conjugate(self) -> "CycloNumber":
        return self.galois(-1)

    def root_of_unity_order(self) -> int | None:
        """Multiplicative order if this is a root of unity, else ``None``."""
        if self.is_zero():
            raise ValueError("zero has no multiplicative order")
        bound = _lcm(2, self._n)
        if self ** bound != 1:
            return None
        order = bound
        for p in prime_factors(bound):
            while order % p == 0 and self ** (order // p) == 1:
                order //= p
        return order

    def to_complex(self) -> complex:
        n = self._n
        total = 0j
        for i, c in enumerate(self._num):
            if c:
                total += c * cmath.exp(2j * math.pi * i / n)
        return total / self._den

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {"conductor": self._n, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, doc: dict) -> "CycloNumber":
        return cls(int(doc["conductor"]), [Fraction(c) for c in doc["coeffs"]])

    def __repr__(self):
        return f"CycloNumber({self._n}, [{', '.join(str(c) for c in self.coeffs)}])"

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else f"({c})*z{self._n}^{i}")
        return " + ".join(terms) or "0"


def _combine(a: CycloNumber, b: CycloNumber, sign: int) -> CycloNumber:
    if a._n == b._n:
        n = a._n
        na, nb = a._num, b._num
        mixed = False
    else:
        n = _lcm(a._n, b._n)
        na, nb = a._lifted_num(n), b._lifted_num(n)
        mixed = True
    num = [x * b._den + sign * y * a._den for x, y in zip(na, nb)]
    out = CycloNumber._raw(n, num, a._den * b._den)
    return out.reduced() if mixed else out


def _crt_split(n: int, p: int, num: list[int]) -> list[int] | None:
    """If the element lies in Q(zeta_{n/p}) (p exactly divides n), return its
    coefficients there, otherwise None."""
    m = n // p
    # zeta_n = zeta_m^u * zeta_p^v with zeta_m = zeta_n^p, zeta_p = zeta_n^m
    u = pow(p, -1, m) if m > 1 else 0
    v = pow(m, -1, p)
    cols = [[0] * m for _ in range(p)]
    for i, c in enumerate(num):
        if c:
            cols[(i * v) % p][(i * u) % m if m > 1 else 0] += c
    top = cols[p - 1]
    if any(top):
        for b in range(p - 1):
            cols[b] = [x - y for x, y in zip(cols[b], top)]
    reduced = [_reduce_poly(col, m) for col in cols[: p - 1]]
    if any(any(col) for col in reduced[1:]):
        return None
    return reduced[0]


def _minimal_conductor(n: int, num: list[int]) -> tuple[int, list[int]]:
    changed = True
    while changed and n > 1:
        changed = False
        if n == 2:
            return 1, num[:1]
        if n % 4 == 2:
            m = n // 2
            e = (m + 1) // 2
            poly = [0] * m
            for i, c in enumerate(num):
                if c:
                    poly[(i * e) % m] += -c if i % 2 else c
            n, num = m, _reduce_poly(poly, m)
            changed = True
            continue
        for p in prime_factors(n):
            if n % (p * p) == 0:
                if all(c == 0 for i, c in enumerate(num) if i % p):
                    num = num[::p][: totient(n // p)]
                    n //= p
                    changed = True
                    break
            else:
                sub = _crt_split(n, p, num)
                if sub is not None:
                    n, num = n // p, sub
                    changed = True
                    break
    return n, num


# ---------------------------------------------------------------------------
# functional surface


def make_root_of_unity(n: int, k: int = 1) -> CycloNumber:
    """zeta_n**k in lowest terms (conductor divides n)."""
    if n < 1:
        raise ValueError("n must be positive")
    k %= n
    g = math.gcd(n, k) if k else n
    n, k = n // g, k // g
    if n % 4 == 2:
        # zeta_{2m} = -zeta_m^((m+1)/2) for odd m
        m = n // 2
        sign = -1 if k % 2 else 1
        n, k = m, (k * (m + 1) // 2) % m if m > 1 else 0
        base = make_root_of_unity(n, k)
        return -base if sign < 0 else base
    poly = [0] * (k + 1)
    poly[k] = 1
    return CycloNumber._raw(n, _reduce_poly(poly, n), 1)


def add(a: CycloNumber, b: CycloNumber) -> CycloNumber:
    return a + b


def mul(a: CycloNumber, b: CycloNumber) -> CycloNumber:
    return a * b


def neg(a: CycloNumber) -> CycloNumber:
    return -a


def inv(a: CycloNumber) -> CycloNumber:
    return a.inverse()


def is_rational(a: CycloNumber) -> Fraction | None:
    return a.is_rational()


def root_of_unity_order(a: CycloNumber) -> int | None:
    return a.root_of_unity_order()


def galois_apply(a: CycloNumber, j: int) -> CycloNumber:
    return a.galois(j)


def embed_complex(a: CycloNumber) -> tuple[float, float]:
    z = a.to_complex()
    return (z.real, z.imag)
