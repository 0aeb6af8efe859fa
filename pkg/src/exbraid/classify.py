"""Which categories C(g, q, l) of exceptional type are weakly integral.

For each type (and each residue class of l modulo the lacing number) a
witness label nu with V_nu inside V_mu (x) V_mu^* is fixed.  If the category
were weakly integral, FPdim(V_nu) would be an integer k, making q a root of
an integer polynomial whose degree D is read off below; then phi(2l) <= D,
which bounds l.  Below the bound every l is checked directly.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .category import (
    AlcoveError,
    CategorySpec,
    dimension_factors,
    fpdim,
    is_pointed,
    is_weakly_integral,
    normalize_type,
    rank,
)
from .cyclo import totient
from .fusion import in_adjoint_witness, stable_level, tensor_with_dual_classical
from .laurent import LaurentPoly, poly_gcd
from .rootdata import Weight, build, named_weight


@dataclass(frozen=True)
class WitnessRow:
    algebra: str
    divisible: bool  # residue class: m | l
    nu: str
    mu: str

    @property
    def case(self) -> str:
        m = build(self.algebra).m
        if m == 1:
            return "all"
        if m == 2:
            return "even" if self.divisible else "odd"
        return f"{m}|l" if self.divisible else f"{m}!|l"

    def weights(self) -> tuple[Weight, Weight]:
        return named_weight(self.algebra, self.nu), named_weight(self.algebra, self.mu)

    def in_class(self, ell: int) -> bool:
        return (ell % build(self.algebra).m == 0) == self.divisible


WITNESS_ROWS = (
    WitnessRow("E6", True, "l2", "l1"),
    WitnessRow("E7", True, "l1", "l7"),
    WitnessRow("E8", True, "l8", "l8"),
    WitnessRow("F4", True, "l1", "l1"),
    WitnessRow("F4", False, "l1", "l1"),
    WitnessRow("G2", True, "l1", "l1"),
    WitnessRow("G2", False, "l1", "l1"),
)


def witness_rows(algebra: str) -> list[WitnessRow]:
    t = normalize_type(algebra)
    return [r for r in WITNESS_ROWS if r.algebra == t]


def witness_row(algebra: str, divisible: bool) -> WitnessRow:
    t = normalize_type(algebra)
    for r in WITNESS_ROWS:
        if r.algebra == t and (r.divisible == divisible or build(t).m == 1):
            return r
    raise KeyError((algebra, divisible))


def format_quotient(num, den) -> str:
    top = "".join(f"[{n}]" for n in num) or "1"
    if not den:
        return top
    return f"{top}/({''.join(f'[{n}]' for n in den)})" if len(den) > 1 else f"{top}/[{den[0]}]"


@dataclass(frozen=True)
class TotientBound:
    row: WitnessRow
    numerator: tuple[int, ...]
    denominator: tuple[int, ...]
    constant_part: LaurentPoly  # relation = constant_part - k * k_part
    k_part: LaurentPoly
    degree: int
    max_ell: int

    @property
    def k_isolated(self) -> bool:
        return len(self.k_part.terms) == 1

    def relation_string(self) -> str:
        """The integer relation satisfied by q, with k written symbolically."""
        parts = []
        exps = sorted(set(self.constant_part.terms) | set(self.k_part.terms), reverse=True)
        for e in exps:
            c, kc = self.constant_part.coeff(e), self.k_part.coeff(e)
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if kc:
                coef = f"({c}-k)" if kc == 1 else f"({c}-{kc}k)"
                parts.append(f"+{coef}{mono}")
            elif mono and abs(c) == 1:
                parts.append(("-" if c < 0 else "+") + mono)
            else:
                parts.append(f"{c:+d}{mono}")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def _product(args) -> LaurentPoly:
    out = LaurentPoly({0: 1})
    for n in args:
        out = out * LaurentPoly.qnumber(n)
    return out


@lru_cache(maxsize=None)
def totient_bound(algebra: str, divisible: bool = True) -> TotientBound:
    """Degree of the integer relation forced by FPdim(V_nu) = k, and the
    largest l in the residue class with phi(2l) at most that degree."""
    row = witness_row(algebra, divisible)
    nu, _ = row.weights()
    num, den = dimension_factors(build(row.algebra), row.divisible, nu)
    top, bottom = _product(num), _product(den)
    quot, rem = top.divmod(bottom)
    if not rem:
        const, kpart = quot, LaurentPoly({0: 1})
    else:
        g = poly_gcd(top, bottom)
        const, _ = top.divmod(g)
        kpart, _ = bottom.divmod(g)
    low = min(const.low, kpart.low)
    const, kpart = const.shifted(-low), kpart.shifted(-low)
    degree = max(const.high, kpart.high)
    best = 0
    for ell in range(2, degree * degree + 2):
        if row.in_class(ell) and totient(2 * ell) <= degree:
            best = ell
    return TotientBound(row, num, den, const, kpart, degree, best)


def scan_start(algebra: str, divisible: bool) -> int:
    """Smallest l in the residue class whose alcove holds a nonzero label."""
    row = witness_row(algebra, divisible)
    rs = build(row.algebra)
    ell = 2
    while True:
        if row.in_class(ell):
            try:
                spec = CategorySpec(row.algebra, ell)
            except AlcoveError:
                spec = None
            if spec is not None and any(spec.contains(tuple(int(i == j) for j in range(rs.rank))) for i in range(rs.rank)):
                return ell
        ell += 1


@dataclass(frozen=True)
class ScanRecord:
    algebra: str
    ell: int
    status: str  # "witness-nonintegral", "not-weakly-integral", "weakly-integral"
    rank: int | None = None
    pointed: bool | None = None


def scan(algebra: str) -> list[ScanRecord]:
    """Every l from the first nontrivial level up to the totient bound."""
    t = normalize_type(algebra)
    out = []
    for row in witness_rows(t):
        bound = totient_bound(t, row.divisible)
        nu, mu = row.weights()
        for ell in range(scan_start(t, row.divisible), bound.max_ell + 1):
            if not row.in_class(ell):
                continue
            spec = CategorySpec(t, ell)
            if in_adjoint_witness(spec, nu, mu):
                r = fpdim(spec, nu).is_rational()
                if r is None or r.denominator != 1:
                    out.append(ScanRecord(t, ell, "witness-nonintegral"))
                    continue
            if is_weakly_integral(spec)[0]:
                out.append(ScanRecord(t, ell, "weakly-integral", rank(spec), is_pointed(spec)))
            else:
                out.append(ScanRecord(t, ell, "not-weakly-integral", rank(spec)))
    return sorted(out, key=lambda r: r.ell)


def weakly_integral(spec: CategorySpec) -> bool:
    """Weak integrality, settled by the witness label whenever it applies."""
    row = witness_row(spec.algebra, spec.divisible)
    nu, mu = row.weights()
    if in_adjoint_witness(spec, nu, mu):
        r = fpdim(spec, nu).is_rational()
        if r is None or r.denominator != 1:
            return False
    return is_weakly_integral(spec)[0]


def witness_covers_tail(row: WitnessRow) -> bool:
    """The witness argument applies to every l beyond the bound: V_nu is a
    classical summand of V_mu (x) V_mu^*, and past the bound the whole
    classical product already sits inside the alcove."""
    rs = build(row.algebra)
    nu, mu = row.weights()
    classical = tensor_with_dual_classical(rs, mu)
    if classical.multiplicity(nu) == 0:
        return False
    bound = totient_bound(row.algebra, row.divisible).max_ell
    theta = rs.theta0 if row.divisible else rs.theta1
    first = bound + 1
    while not row.in_class(first):
        first += 1
    return stable_level(rs, mu, rs.dual(mu), theta) <= first


def classify_weakly_integral(algebra: str) -> list[tuple[int, int, bool]]:
    """(l, rank, pointed) for every weakly integral case of rank at least 2."""
    for row in witness_rows(algebra):
        if not witness_covers_tail(row):
            raise RuntimeError(f"witness for {row} does not cover large l")
    return [
        (r.ell, r.rank, r.pointed)
        for r in scan(algebra)
        if r.status == "weakly-integral" and r.rank is not None and r.rank >= 2
    ]


def rank_one_cases(algebra: str) -> list[int]:
    """Levels with a nonempty alcove of rank 1, all below the scan start."""
    t = normalize_type(algebra)
    out = []
    for row in witness_rows(t):
        for ell in range(2, scan_start(t, row.divisible)):
            if not row.in_class(ell):
                continue
            try:
                spec = CategorySpec(t, ell)
            except AlcoveError:
                continue
            if rank(spec) == 1:
                out.append(ell)
    return sorted(out)
