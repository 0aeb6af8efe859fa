"""Eigenvalues of the braiding c_{V,V} on tensor squares and Hom spaces.

On a summand W = V_mu of V (x) V the braiding acts by

    +/- f * q^(<mu, mu + 2 rho> / 2),

with + for summands of the symmetric square and - for the exterior square.
The overall factor f depends only on V and is never needed: every decision
downstream uses ratios of eigenvalues.  Exponents are kept as Fractions so
that half-integral (or third-integral, for E6 and E7) values stay exact.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction

from .category import AlcoveError, CategorySpec, qpower
from .cyclo import CycloNumber
from .fusion import (
    ANTISYMMETRIC,
    SYMMETRIC,
    UNSPLIT,
    fusion_coefficient,
    tensor_square_truncated,
)
from .rootdata import Weight, en_pair

RAW = "raw-up-to-global-scale"
RATIO = "ratio-normalized"
UNKNOWN = "unknown"


class MultiplicityError(ValueError):
    """The tensor square is not multiplicity free (or a parity is unknown)."""


class StableRangeError(ValueError):
    pass


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues ``sign_i * q**exponent_i`` with their origin."""

    ell: int
    signs: tuple[int, ...]
    exponents: tuple[Fraction, ...]
    provenance: tuple[Weight | None, ...]
    parities: tuple[str, ...]
    normalization: str = RAW

    @classmethod
    def from_terms(cls, ell: int, terms, normalization: str = RAW) -> "Spectrum":
        """``terms``: iterable of (sign, exponent[, weight[, parity]])."""
        signs, exps, prov, par = [], [], [], []
        for t in terms:
            signs.append(int(t[0]))
            exps.append(Fraction(t[1]))
            prov.append(tuple(t[2]) if len(t) > 2 and t[2] is not None else None)
            par.append(t[3] if len(t) > 3 else UNKNOWN)
        return cls(ell, tuple(signs), tuple(exps), tuple(prov), tuple(par), normalization)

    @property
    def values(self) -> tuple[CycloNumber, ...]:
        return tuple(s * qpower(self.ell, e) for s, e in zip(self.signs, self.exponents))

    def __len__(self):
        return len(self.signs)

    def is_distinct(self) -> bool:
        return len(set(self.values)) == len(self)

    def scaled(self, sign: int, exponent) -> "Spectrum":
        """Multiply every value by ``sign * q**exponent``."""
        return replace(
            self,
            signs=tuple(sign * s for s in self.signs),
            exponents=tuple(e + Fraction(exponent) for e in self.exponents),
        )

    def describe(self) -> list[str]:
        out = []
        for s, e in zip(self.signs, self.exponents):
            if e == 0:
                body = "1"
            elif e == 1:
                body = "q"
            else:
                body = f"q^{e}" if e.denominator == 1 else f"q^({e})"
            out.append(("-" if s < 0 else "") + body)
        return out

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "values": [v.reduced().to_json() for v in self.values],
            "display": self.describe(),
            "provenance": [list(w) if w is not None else None for w in self.provenance],
            "parities": list(self.parities),
            "normalization": self.normalization,
        }


def _parity_sign(parity: str) -> int:
    if parity == SYMMETRIC:
        return 1
    if parity == ANTISYMMETRIC:
        return -1
    raise MultiplicityError("summand has no definite parity")


def casimir_exponent(spec: CategorySpec, mu: Weight) -> Fraction:
    """<mu + 2 rho, mu>."""
    rs = spec.rs
    return rs.pairing(tuple(c + 2 for c in mu), mu)


def twist(spec: CategorySpec, mu: Weight) -> CycloNumber:
    return qpower(spec.ell, casimir_exponent(spec, tuple(mu)))


def _square_terms(spec: CategorySpec, v: Weight):
    sq = tensor_square_truncated(spec, v)
    if not sq.is_multiplicity_free():
        raise MultiplicityError(f"truncated square of {v} at ell={spec.ell} is not multiplicity free")
    out = []
    for w, _, parity in sq.summands:
        if parity == UNSPLIT:
            raise MultiplicityError(f"summand {w} of {v} x {v} lost its parity under truncation")
        out.append((_parity_sign(parity), casimir_exponent(spec, w) / 2, w, parity))
    return out


def sigma_spectrum(spec: CategorySpec, v: Weight) -> Spectrum:
    """One eigenvalue per summand of the truncated V (x) V."""
    v = spec.require(v)
    return Spectrum.from_terms(spec.ell, _square_terms(spec, v))


def hom_spectrum(spec: CategorySpec, v: Weight, target: Weight) -> Spectrum:
    """Eigenvalues of sigma_1 on Hom(V_target, V (x) V (x) V), with
    multiplicity: the summand Y of V (x) V contributes N_{Y,V}^target copies."""
    v, target = spec.require(v), spec.require(target)
    terms = []
    for sign, e, w, parity in _square_terms(spec, v):
        n = fusion_coefficient(spec, w, v, target)
        terms.extend([(sign, e, w, parity)] * n)
    return Spectrum.from_terms(spec.ell, terms)


def en_labels(spec: CategorySpec) -> tuple[Weight, Weight]:
    """(V, target) for the E-series three-dimensional Hom space."""
    vector, partner = en_pair(spec.algebra)
    return vector, tuple(a + b for a, b in zip(vector, partner))


def in_stable_range(spec: CategorySpec) -> bool:
    if not spec.algebra.startswith("E"):
        return False
    return spec.contains(en_labels(spec)[1])


def en_series_spectrum(n: int, spec: CategorySpec) -> Spectrum:
    """{q, -q^-1, q^(3-2N)} on Hom(V_(l1+lN), V^(x)3)."""
    if spec.algebra != f"E{n}":
        raise ValueError(f"category {spec.algebra} is not of type E{n}")
    if not in_stable_range(spec):
        raise StableRangeError(f"ell={spec.ell} is below the stable range of E{n}")
    return Spectrum.from_terms(
        spec.ell,
        [(1, 1, None, SYMMETRIC), (-1, -1, None, ANTISYMMETRIC), (1, 3 - 2 * n, None, SYMMETRIC)],
    )


def en_series_derived(spec: CategorySpec) -> Spectrum:
    """The same Hom space computed from fusion data."""
    v, target = en_labels(spec)
    return hom_spectrum(spec, v, target)


def normalize_ratios(s: Spectrum) -> Spectrum:
    """Divide by a reference eigenvalue and put it first.

    The reference is the symmetric-parity value of smallest exponent, or the
    first value when no parity is known.
    """
    if not len(s):
        return replace(s, normalization=RATIO)
    candidates = [i for i, p in enumerate(s.parities) if p == SYMMETRIC]
    ref = min(candidates, key=lambda i: (s.exponents[i], i)) if candidates else 0
    order = [ref] + [i for i in range(len(s)) if i != ref]
    sign, exp = s.signs[ref], s.exponents[ref]
    return Spectrum(
        s.ell,
        tuple(s.signs[i] * sign for i in order),
        tuple(s.exponents[i] - exp for i in order),
        tuple(s.provenance[i] for i in order),
        tuple(s.parities[i] for i in order),
        RATIO,
    )


def _multiset(values) -> Counter:
    return Counter(v.reduced() for v in values)


def same_up_to_scale(a, b) -> bool:
    """Whether the value multisets differ by one common nonzero factor."""
    va = a.values if isinstance(a, Spectrum) else tuple(a)
    vb = b.values if isinstance(b, Spectrum) else tuple(b)
    if len(va) != len(vb):
        return False
    if not va:
        return True
    target = _multiset(va)
    for y in set(vb):
        c = va[0] / y
        if _multiset(c * x for x in vb) == target:
            return True
    return False


def square_consistent(s: Spectrum, spec: CategorySpec) -> bool:
    """(v_i / v_j)^2 == theta_i / theta_j for all pairs with known summands."""
    known = [(v, w) for v, w in zip(s.values, s.provenance) if w is not None]
    if len(known) < 2:
        return True
    v0, w0 = known[0]
    t0 = twist(spec, w0)
    return all((v / v0) ** 2 == twist(spec, w) / t0 for v, w in known[1:])


# -- published spectra (for regression) --------------------------------------


def reference_spectrum(name: str, ell: int) -> Spectrum:
    """Literature spectra, up to global scale, keyed by case name."""
    table = {
        "G2-l1": [(1, 0), (-1, 6), (-1, 12), (1, 14)],
        "G2-l1-rescaled": [(1, -12), (-1, -6), (-1, 0), (1, 2)],
        "F4-l1-even": [(1, -24), (1, -12), (1, 2), (-1, 0), (-1, -6)],
        "F4-l4-24": [(1, 0), (1, 26), (-1, 18), (-1, 36)],
    }
    if name in table:
        return Spectrum.from_terms(ell, table[name])
    if name in ("E6", "E7", "E8"):
        n = int(name[1])
        return Spectrum.from_terms(ell, [(1, 1), (-1, -1), (1, 3 - 2 * n)])
    raise KeyError(name)
