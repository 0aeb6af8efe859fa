"""Tensor product decompositions, classical and truncated.

Classical products use the Brauer-Klimyk rule: the weights of the smaller
factor are added to the highest weight of the larger one and reflected to
the dominant chamber under the rho-shifted Weyl action.  The symmetric and
exterior squares are separated with the Adams operation psi^2, whose
character is the sum of e^(2 gamma) over the weights gamma of V:

    Sym^2 V = (V (x) V + psi^2 V) / 2,   Alt^2 V = (V (x) V - psi^2 V) / 2.

Truncated products push classical summands through the affine Weyl group at
level ell (Kac-Walton).  ``fusion_product`` applies the affine reduction to
the individual Brauer-Klimyk terms instead; both routes must agree.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from . import cache
from .category import CategorySpec, alcove_order_key
from .rootdata import DEFAULT_SIZE_BOUND, RootSystem, Weight

SYMMETRIC = "symmetric"
ANTISYMMETRIC = "antisymmetric"
UNSPLIT = "unsplit"


class NegativeMultiplicity(ArithmeticError):
    """A signed multiplicity ended up negative; this is always a bug."""


@dataclass(frozen=True)
class FusionDecomposition:
    algebra: str
    factors: tuple[Weight, Weight]
    summands: tuple[tuple[Weight, int, str], ...]
    truncated: bool = False
    ell: int | None = None
    discarded: tuple[tuple[Weight, str], ...] = field(default=())

    def multiplicities(self) -> dict[Weight, int]:
        out: dict[Weight, int] = {}
        for w, m, _ in self.summands:
            out[w] = out.get(w, 0) + m
        return out

    def multiplicity(self, w: Weight) -> int:
        return self.multiplicities().get(tuple(w), 0)

    def weights(self) -> list[Weight]:
        return list(self.multiplicities())

    def parity(self, w: Weight) -> str:
        tags = {p for x, _, p in self.summands if x == tuple(w)}
        if len(tags) != 1:
            return UNSPLIT
        return tags.pop()

    def is_multiplicity_free(self) -> bool:
        return all(m == 1 for m in self.multiplicities().values()) and len(self.summands) == len(
            self.multiplicities()
        )

    def to_json(self) -> dict:
        doc = {
            "algebra": self.algebra,
            "factors": [list(f) for f in self.factors],
            "summands": [{"weight": list(w), "multiplicity": m, "parity": p} for w, m, p in self.summands],
            "truncated": self.truncated,
            "discarded": [{"weight": list(w), "reason": r} for w, r in self.discarded],
        }
        if self.ell is not None:
            doc["ell"] = self.ell
        return doc


# -- weight data --------------------------------------------------------------


size_bound = DEFAULT_SIZE_BOUND  # largest module dimension expanded


@lru_cache(maxsize=None)
def dominant_weights(rs: RootSystem, lam: Weight):
    key = (rs.type_tag, list(lam))
    hit = cache.load("weights", key)
    if hit is not None:
        return tuple((tuple(w), m) for w, m in hit)
    ws = rs.weight_system(lam, size_bound)
    cache.store("weights", key, [[list(w), m] for w, m in ws.dominant])
    return ws.dominant


@lru_cache(maxsize=None)
def weights(rs: RootSystem, lam: Weight) -> tuple[tuple[Weight, int], ...]:
    """All weights of V_lam with multiplicities."""
    out = []
    for mu, m in dominant_weights(rs, lam):
        out.extend((w, m) for w in rs.orbit(mu))
    return tuple(out)


def _sorted(counter: dict[Weight, int]) -> list[Weight]:
    return sorted(counter, key=alcove_order_key)


def _check_nonnegative(counter: Counter, what: str) -> None:
    bad = {w: m for w, m in counter.items() if m < 0}
    if bad:
        raise NegativeMultiplicity(f"{what}: negative multiplicities {bad}")


# -- classical ----------------------------------------------------------------


def _brauer_klimyk(rs: RootSystem, top: Weight, terms) -> Counter:
    acc: Counter = Counter()
    for gamma, m in terms:
        mu, sign, wall = rs.to_dominant(tuple(a + b for a, b in zip(top, gamma)))
        if not wall:
            acc[mu] += sign * m
    return acc


@lru_cache(maxsize=None)
def _classical_product(rs: RootSystem, lam: Weight, mu: Weight) -> tuple[tuple[Weight, int], ...]:
    big, small = (lam, mu) if rs.weyl_dim(lam) >= rs.weyl_dim(mu) else (mu, lam)
    acc = _brauer_klimyk(rs, big, weights(rs, small))
    _check_nonnegative(acc, f"{lam} x {mu}")
    return tuple((w, acc[w]) for w in _sorted(acc) if acc[w])


def _adams_square(rs: RootSystem, lam: Weight) -> Counter:
    doubled = [(tuple(2 * c for c in g), m) for g, m in weights(rs, lam)]
    acc: Counter = Counter()
    for g, m in doubled:
        mu, sign, wall = rs.to_dominant(g)
        if not wall:
            acc[mu] += sign * m
    return acc


def tensor_product_classical(rs: RootSystem, lam: Weight, mu: Weight) -> FusionDecomposition:
    lam, mu = tuple(lam), tuple(mu)
    summands = tuple((w, m, UNSPLIT) for w, m in _classical_product(rs, lam, mu))
    return FusionDecomposition(rs.type_tag, (lam, mu), summands)


@lru_cache(maxsize=None)
def _classical_square(rs: RootSystem, lam: Weight) -> FusionDecomposition:
    total = dict(_classical_product(rs, lam, lam))
    adams = _adams_square(rs, lam)
    summands = []
    for w in _sorted(total):
        t, p = total[w], adams.get(w, 0)
        if (t + p) % 2:
            raise ArithmeticError(f"parity split of {lam} x {lam} is not integral at {w}")
        sym, alt = (t + p) // 2, (t - p) // 2
        if sym < 0 or alt < 0:
            raise NegativeMultiplicity(f"parity split of {lam} x {lam} at {w}")
        if sym:
            summands.append((w, sym, SYMMETRIC))
        if alt:
            summands.append((w, alt, ANTISYMMETRIC))
    stray = {w: m for w, m in adams.items() if m and w not in total}
    if stray:
        raise ArithmeticError(f"psi^2 has weights outside the tensor square: {stray}")
    return FusionDecomposition(rs.type_tag, (lam, lam), tuple(summands))


def tensor_square_classical(rs: RootSystem, lam: Weight) -> FusionDecomposition:
    """V (x) V with each summand tagged symmetric or antisymmetric."""
    lam = tuple(lam)
    rs.weyl_dim(lam)  # rejects non-dominant input
    return _classical_square(rs, lam)


def tensor_with_dual_classical(rs: RootSystem, mu: Weight) -> FusionDecomposition:
    return tensor_product_classical(rs, mu, rs.dual(tuple(mu)))


# -- affine truncation --------------------------------------------------------


def affine_reduce(spec: CategorySpec, w: Weight) -> tuple[Weight, int] | None:
    """Move ``w`` into the alcove under the rho-shifted affine Weyl group.

    Returns ``(label, sign)`` or ``None`` when ``w + rho`` lies on a wall.
    """
    rs = spec.rs
    theta = spec.theta
    half = spec.theta_half_length
    x = tuple(c + 1 for c in w)
    sign = 1
    for _ in range(10_000):
        for i, c in enumerate(x):
            if c < 0:
                x = rs.reflect(x, i)
                sign = -sign
                break
        else:
            if any(c == 0 for c in x):
                return None
            t = spec.level(x)
            if t < spec.ell:
                return tuple(c - 1 for c in x), sign
            if t == spec.ell:
                return None
            k, r = divmod(t - spec.ell, half)
            if r:
                raise ArithmeticError(f"affine reflection of {w} is not integral")
            x = tuple(a - k * b for a, b in zip(x, theta))
            sign = -sign
    raise RuntimeError(f"affine reduction of {w} did not terminate")


@lru_cache(maxsize=None)
def _truncated_square(spec: CategorySpec, lam: Weight) -> FusionDecomposition:
    classical = _classical_square(spec.rs, lam)
    acc: dict[Weight, dict[str, int]] = {}
    discarded: list[tuple[Weight, str]] = []
    for w, m, par in classical.summands:
        red = affine_reduce(spec, w)
        if red is None:
            discarded.append((w, "wall"))
            continue
        target, sign = red
        if target != w:
            discarded.append((w, "cancelled"))
        slot = acc.setdefault(target, {SYMMETRIC: 0, ANTISYMMETRIC: 0})
        slot[par] += sign * m
    summands = []
    for w in _sorted(acc):
        sym, alt = acc[w][SYMMETRIC], acc[w][ANTISYMMETRIC]
        total = sym + alt
        if total < 0:
            raise NegativeMultiplicity(f"truncated {lam} x {lam} at ell={spec.ell}: {w} has {total}")
        if total == 0:
            if w in dict(classical.multiplicities()):
                discarded.append((w, "cancelled"))
            continue
        if sym >= 0 and alt >= 0:
            if sym:
                summands.append((w, sym, SYMMETRIC))
            if alt:
                summands.append((w, alt, ANTISYMMETRIC))
        else:
            summands.append((w, total, UNSPLIT))
    discarded = sorted(set(discarded), key=lambda d: (alcove_order_key(d[0]), d[1]))
    return FusionDecomposition(
        spec.algebra, (lam, lam), tuple(summands), True, spec.ell, tuple(discarded)
    )


def tensor_square_truncated(spec: CategorySpec, lam: Weight) -> FusionDecomposition:
    """V (x) V in C(g, q, ell), parity tags carried over from the classical split."""
    return _truncated_square(spec, spec.require(lam))


@lru_cache(maxsize=None)
def _fusion_product(spec: CategorySpec, lam: Weight, mu: Weight) -> tuple[tuple[Weight, int], ...]:
    key = (spec.algebra, spec.ell, list(lam), list(mu))
    hit = cache.load("fusion", key)
    if hit is not None:
        return tuple((tuple(w), m) for w, m in hit)
    rs = spec.rs
    big, small = (lam, mu) if rs.weyl_dim(lam) >= rs.weyl_dim(mu) else (mu, lam)
    acc: Counter = Counter()
    for gamma, m in weights(rs, small):
        red = affine_reduce(spec, tuple(a + b for a, b in zip(big, gamma)))
        if red is not None:
            acc[red[0]] += red[1] * m
    _check_nonnegative(acc, f"fusion {lam} x {mu} at ell={spec.ell}")
    out = tuple((w, acc[w]) for w in _sorted(acc) if acc[w])
    cache.store("fusion", key, [[list(w), m] for w, m in out])
    return out


def fusion_product(spec: CategorySpec, lam: Weight, mu: Weight) -> FusionDecomposition:
    """Truncated V_lam (x) V_mu by affine reduction of Brauer-Klimyk terms."""
    lam, mu = spec.require(lam), spec.require(mu)
    summands = tuple((w, m, UNSPLIT) for w, m in _fusion_product(spec, lam, mu))
    return FusionDecomposition(spec.algebra, (lam, mu), summands, True, spec.ell)


def fusion_coefficient(spec: CategorySpec, lam: Weight, mu: Weight, nu: Weight) -> int:
    return dict(_fusion_product(spec, spec.require(lam), spec.require(mu))).get(tuple(nu), 0)


def hom_dim_cube(spec: CategorySpec, v: Weight, target: Weight) -> int:
    """dim Hom(target, V (x) V (x) V) in the truncated category."""
    v, target = spec.require(v), spec.require(target)
    total = 0
    for y, m in _fusion_product(spec, v, v):
        total += m * fusion_coefficient(spec, y, v, target)
    return total


def in_adjoint_witness(spec: CategorySpec, nu: Weight, mu: Weight) -> bool:
    """Whether V_nu is a summand of V_mu (x) V_mu^* in the truncated category."""
    if not (spec.contains(nu) and spec.contains(mu)):
        return False
    return fusion_coefficient(spec, mu, spec.rs.dual(tuple(mu)), nu) > 0


def stable_level(rs: RootSystem, lam: Weight, mu: Weight, theta: Weight) -> int:
    """Least ell (for the given alcove root) from which truncating
    V_lam (x) V_mu changes nothing: every classical summand is a label."""
    root = rs.weight_to_root(theta)
    tv = [int(c * d) for c, d in zip(root, rs.half_lengths)]
    levels = [sum(t * c for t, c in zip(tv, w)) for w, _ in _classical_product(rs, tuple(lam), tuple(mu))]
    return max(levels) + sum(tv) + 1
