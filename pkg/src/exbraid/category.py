"""Label sets, q-numbers and Frobenius-Perron dimensions of C(g, q, l).

The category is fixed by an exceptional type and a positive integer ``ell``
with ``q = exp(pi i / ell)``.  Every value produced here lives in the
cyclotomic field of conductor ``2 * ell`` and is kept at that conductor, so
that products never pay for conductor changes.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd

from .cyclo import CycloNumber
from .rootdata import TYPES, RootSystem, Weight, build


class AlcoveError(ValueError):
    """A weight outside the alcove was used where a label was required."""


def normalize_type(tag: str) -> str:
    t = tag.strip().upper()
    if t not in TYPES:
        raise ValueError(f"unknown exceptional type {tag!r}")
    return t


@dataclass(frozen=True)
class CategorySpec:
    algebra: str
    ell: int

    def __post_init__(self):
        object.__setattr__(self, "algebra", normalize_type(self.algebra))
        if self.ell < 2:
            raise ValueError("ell must be at least 2")
        rs = build(self.algebra)
        if rs.pairing(rs.rho, self.theta) >= self.ell:
            raise AlcoveError(f"C_{self.ell}({self.algebra}) is empty")

    @property
    def rs(self) -> RootSystem:
        return build(self.algebra)

    @property
    def divisible(self) -> bool:
        """True when the lacing number m divides ell (long highest root)."""
        return self.ell % self.rs.m == 0

    @property
    def theta(self) -> Weight:
        rs = build(self.algebra)
        return rs.theta0 if self.ell % rs.m == 0 else rs.theta1

    @property
    def conductor(self) -> int:
        return 2 * self.ell

    @property
    def q(self) -> CycloNumber:
        return qpower(self.ell, 1)

    @cached_property
    def theta_vector(self) -> tuple[int, ...]:
        """Integers t_j with <w, theta> = sum t_j w_j."""
        rs = self.rs
        root = rs.weight_to_root(self.theta)
        return tuple(int(c * d) for c, d in zip(root, rs.half_lengths))

    @cached_property
    def theta_half_length(self) -> int:
        return int(self.rs.norm2(self.theta)) // 2

    def level(self, w: Weight) -> int:
        """<w, theta> for the alcove-defining root."""
        return sum(t * c for t, c in zip(self.theta_vector, w))

    def contains(self, w: Weight) -> bool:
        return all(c >= 0 for c in w) and self.level(w) + self.level(self.rs.rho) < self.ell

    def require(self, w: Weight) -> Weight:
        w = tuple(w)
        if len(w) != self.rs.rank:
            raise ValueError(f"weight {w} has the wrong length for {self.algebra}")
        if not self.contains(w):
            raise AlcoveError(f"{w} is not in the alcove of {self.algebra} at ell={self.ell}")
        return w


# -- q-powers and q-numbers --------------------------------------------------


def qpower(ell: int, e) -> CycloNumber:
    """q**e for rational e, q = zeta_(2 ell).

    Integral exponents stay at conductor ``2 ell``; an exponent with
    denominator b moves to conductor ``2 ell b``.
    """
    e = Fraction(e)
    n = 2 * ell * e.denominator
    k = e.numerator % n
    coeffs = [0] * (k + 1)
    coeffs[k] = 1
    return CycloNumber(n, coeffs)


@lru_cache(maxsize=None)
def qnumber_at(ell: int, n: int) -> CycloNumber:
    """[n] at q = zeta_(2 ell), from its Laurent expansion."""
    size = 2 * ell
    coeffs = [0] * size
    sign = 1 if n >= 0 else -1
    for j in range(abs(n)):
        coeffs[(abs(n) - 1 - 2 * j) % size] += sign
    return CycloNumber(size, coeffs)


@lru_cache(maxsize=None)
def qnumber_inverse_at(ell: int, n: int) -> CycloNumber:
    """1/[n] in closed form.

    With w = q**(2n) of order o > 1, 1/(w - 1) = (1/o) sum_k k w**k, and
    1/[n] = q**(n-1) (q**2 - 1) / (w - 1).
    """
    if n % ell == 0:
        raise ZeroDivisionError(f"[{n}] vanishes at ell={ell}")
    size = 2 * ell
    o = ell // gcd(ell, n)
    coeffs = [0] * size
    for k in range(1, o):
        base = n - 1 + 2 * n * k
        coeffs[(base + 2) % size] += k
        coeffs[base % size] -= k
    return CycloNumber(size, [Fraction(c, o) for c in coeffs])


def qnumber(spec: CategorySpec, n: int) -> CycloNumber:
    return qnumber_at(spec.ell, n)


# -- alcove and dimensions ---------------------------------------------------


def _bounded_vectors(costs: tuple[int, ...], budget: int):
    """Nonnegative integer vectors c with sum(c_i * costs_i) <= budget."""
    if not costs:
        yield ()
        return
    head, rest = costs[0], costs[1:]
    for c in range(budget // head + 1):
        for tail in _bounded_vectors(rest, budget - c * head):
            yield (c,) + tail


def alcove_order_key(w: Weight):
    return (sum(w), tuple(-c for c in w))


@lru_cache(maxsize=None)
def _alcove(spec: CategorySpec) -> tuple[Weight, ...]:
    budget = spec.ell - 1 - spec.level(spec.rs.rho)
    labels = list(_bounded_vectors(spec.theta_vector, budget))
    return tuple(sorted(labels, key=alcove_order_key))


def alcove(spec: CategorySpec) -> list[Weight]:
    """All labels of simple objects, in graded order (0 first)."""
    return list(_alcove(spec))


def rank(spec: CategorySpec) -> int:
    return len(_alcove(spec))


def dimension_factors(rs: RootSystem, divisible: bool, lam: Weight) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """q-number arguments of numerator and denominator of FPdim(V_lam), after
    cancelling common factors and dropping [1].  Roots are used when m | l,
    coroots otherwise."""
    shifted = tuple(c + 1 for c in lam)
    if divisible:
        num, den = rs.root_pairings(shifted), rs.root_pairings(rs.rho)
    else:
        num, den = rs.coroot_pairings(shifted), rs.coroot_pairings(rs.rho)
    cn, cd = Counter(num), Counter(den)
    common = cn & cd
    cn -= common
    cd -= common
    cn.pop(1, None)
    cd.pop(1, None)
    return tuple(sorted(cn.elements())), tuple(sorted(cd.elements()))


def fpdim_factors(spec: CategorySpec, lam: Weight) -> tuple[tuple[int, ...], tuple[int, ...]]:
    return dimension_factors(spec.rs, spec.divisible, tuple(lam))


@lru_cache(maxsize=None)
def _fpdim(spec: CategorySpec, lam: Weight) -> CycloNumber:
    num, den = fpdim_factors(spec, lam)
    out = CycloNumber.rational(1).lift(spec.conductor)
    for n in num:
        out = out * qnumber_at(spec.ell, n)
    for n in den:
        out = out * qnumber_inverse_at(spec.ell, n)
    return out


def fpdim(spec: CategorySpec, lam: Weight) -> CycloNumber:
    return _fpdim(spec, spec.require(lam))


def fpdims(spec: CategorySpec) -> dict[Weight, CycloNumber]:
    return {w: _fpdim(spec, w) for w in _alcove(spec)}


class InternalInconsistency(RuntimeError):
    """Two independent routes to the same quantity disagreed."""


def is_weakly_integral(spec: CategorySpec) -> tuple[bool, Weight | None]:
    """(flag, first label whose squared dimension is not an integer)."""
    witness = None
    total = CycloNumber.rational(0)
    for w, d in fpdims(spec).items():
        sq = d * d
        total = total + sq
        r = sq.is_rational()
        if witness is None and (r is None or r.denominator != 1):
            witness = w
    t = total.is_rational()
    total_ok = t is not None and t.denominator == 1
    if total_ok != (witness is None):
        raise InternalInconsistency(
            f"{spec}: per-object and total weak-integrality tests disagree"
        )
    return witness is None, witness


def is_pointed(spec: CategorySpec) -> bool:
    return all(d == 1 for d in fpdims(spec).values())


def to_json(spec: CategorySpec) -> dict:
    dims = fpdims(spec)
    flag, _ = is_weakly_integral(spec)
    return {
        "algebra": spec.algebra,
        "ell": spec.ell,
        "rank": len(dims),
        "labels": [list(w) for w in dims],
        "fpdims": [d.reduced().to_json() for d in dims.values()],
        "weakly_integral": flag,
        "pointed": all(d == 1 for d in dims.values()),
    }
