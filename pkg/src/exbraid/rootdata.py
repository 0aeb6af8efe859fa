"""Root data and Weyl group machinery for the exceptional types.

Node numbering follows Bourbaki throughout:

* G2: alpha_1 short, alpha_2 long.
* F4: alpha_1, alpha_2 long; alpha_3, alpha_4 short.
* E6, E7, E8: chain 1-3-4-5-...-N with node 2 attached to node 4.

Weights are plain integer tuples in the fundamental-weight basis.  Roots are
kept both in simple-root coordinates and in weight coordinates.  The
invariant form is normalized so that short roots have squared length 2.

The translation from the labels used in the literature on these categories
(where e.g. the F4 numbering runs backwards) lives in ``data/labels.json``;
see :func:`named_weight`.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from importlib import resources
from math import prod
from typing import Iterable

Weight = tuple[int, ...]

TYPES = ("G2", "F4", "E6", "E7", "E8")

DEFAULT_SIZE_BOUND = 100_000


class SizeBoundExceeded(ValueError):
    """A representation is too large to expand under the configured bound."""


def _e_cartan(n: int) -> list[list[int]]:
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    edges = [(0, 2), (1, 3), (2, 3)] + [(k, k + 1) for k in range(3, n - 1)]
    for i, j in edges:
        c[i][j] = c[j][i] = -1
    return c


def _cartan(tag: str) -> tuple[list[list[int]], list[int]]:
    """Cartan matrix with C[i][j] = <alpha_i, alpha_j^vee> and half squared
    lengths of the simple roots."""
    if tag == "G2":
        return [[2, -1], [-3, 2]], [1, 3]
    if tag == "F4":
        return [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]], [2, 2, 1, 1]
    if tag in ("E6", "E7", "E8"):
        n = int(tag[1])
        return _e_cartan(n), [1] * n
    raise ValueError(f"unknown type {tag!r}; expected one of {TYPES}")


def _invert(mat: list[list[int]]) -> list[list[Fraction]]:
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        f = a[col][col]
        a[col] = [x / f for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                g = a[r][col]
                a[r] = [x - g * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


@dataclass(frozen=True)
class RootSystem:
    type_tag: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]
    half_lengths: tuple[int, ...]  # <alpha_i, alpha_i> / 2 for simple roots
    positive_roots: tuple[tuple[int, ...], ...]  # simple-root coordinates
    root_half_lengths: tuple[int, ...]
    m: int
    gram: tuple[tuple[Fraction, ...], ...] = field(repr=False)

    # -- derived tables ----------------------------------------------------

    @cached_property
    def simple_roots_wt(self) -> tuple[Weight, ...]:
        return tuple(tuple(row) for row in self.cartan)

    @cached_property
    def positive_roots_wt(self) -> tuple[Weight, ...]:
        return tuple(self.root_to_weight(a) for a in self.positive_roots)

    @cached_property
    def positive_coroots(self) -> tuple[tuple[int, ...], ...]:
        """Positive coroots in simple-coroot coordinates."""
        out = []
        for a, h in zip(self.positive_roots, self.root_half_lengths):
            out.append(tuple(c * d // h for c, d in zip(a, self.half_lengths)))
        return tuple(out)

    @cached_property
    def _root_pairing_vectors(self) -> tuple[tuple[int, ...], ...]:
        # <lambda, alpha> = sum_j v[j] * lambda_j
        return tuple(tuple(c * d for c, d in zip(a, self.half_lengths)) for a in self.positive_roots)

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @property
    def zero(self) -> Weight:
        return (0,) * self.rank

    @cached_property
    def theta0(self) -> Weight:
        """Highest root, in weight coordinates."""
        return self.positive_roots_wt[self._highest(lambda h: True)]

    @cached_property
    def theta1(self) -> Weight:
        """Highest short root, in weight coordinates."""
        return self.positive_roots_wt[self._highest(lambda h: h == 1)]

    def _highest(self, keep) -> int:
        best = max(
            (i for i, h in enumerate(self.root_half_lengths) if keep(h)),
            key=lambda i: sum(self.positive_roots[i]),
        )
        return best

    @cached_property
    def _cartan_inverse(self) -> list[list[Fraction]]:
        return _invert([list(r) for r in self.cartan])

    # -- basic evaluations -------------------------------------------------

    def root_to_weight(self, root: Iterable[int]) -> Weight:
        root = tuple(root)
        return tuple(sum(root[i] * self.cartan[i][j] for i in range(self.rank)) for j in range(self.rank))

    def weight_to_root(self, w: Iterable) -> tuple[Fraction, ...]:
        w = tuple(w)
        inv = self._cartan_inverse
        return tuple(sum(w[i] * inv[i][j] for i in range(self.rank)) for j in range(self.rank))

    def pairing(self, w: Iterable, v: Iterable) -> Fraction:
        """Normalized invariant form of two weight-coordinate vectors."""
        w, v = tuple(w), tuple(v)
        g = self.gram
        return sum((w[i] * g[i][j] * v[j] for i in range(self.rank) for j in range(self.rank) if w[i] and v[j]), Fraction(0))

    def norm2(self, w: Iterable) -> Fraction:
        return self.pairing(w, w)

    def coroot_pairings(self, w: Weight) -> list[int]:
        """<w, alpha^vee> for every positive root, in root order."""
        return [sum(b * x for b, x in zip(cr, w)) for cr in self.positive_coroots]

    def root_pairings(self, w: Weight) -> list[int]:
        """<w, alpha> for every positive root, in root order."""
        return [sum(b * x for b, x in zip(v, w)) for v in self._root_pairing_vectors]

    def height(self, root: Iterable[int]) -> int:
        return sum(root)

    def level(self, w: Weight, top: Weight) -> Fraction:
        """Height of ``top - w`` in simple-root coordinates."""
        return sum(self.weight_to_root(tuple(t - x for t, x in zip(top, w))))

    # -- Weyl group --------------------------------------------------------

    def reflect(self, w: Weight, i: int) -> Weight:
        c = w[i]
        if not c:
            return w
        a = self.cartan[i]
        return tuple(x - c * y for x, y in zip(w, a))

    def dominant_conjugate(self, w: Weight) -> Weight:
        """Dominant element of the (linear) Weyl orbit of ``w``."""
        w = tuple(w)
        while True:
            for i, c in enumerate(w):
                if c < 0:
                    w = self.reflect(w, i)
                    break
            else:
                return w

    def to_dominant(self, w: Weight) -> tuple[Weight, int, bool]:
        """Reduce ``w`` under the rho-shifted action.

        Returns ``(mu, sign, on_wall)`` where ``mu + rho`` is the dominant
        conjugate of ``w + rho`` and ``sign`` is ``(-1)**length``.  When
        ``w + rho`` is fixed by a reflection ``on_wall`` is set; such weights
        contribute nothing to characters.
        """
        x = tuple(c + 1 for c in w)
        sign = 1
        while True:
            for i, c in enumerate(x):
                if c < 0:
                    x = self.reflect(x, i)
                    sign = -sign
                    break
            else:
                break
        on_wall = any(c == 0 for c in x)
        return tuple(c - 1 for c in x), sign, on_wall

    def orbit(self, w: Weight) -> list[Weight]:
        """Full linear Weyl orbit of ``w`` (breadth first from its dominant
        conjugate; intended only for small orbits)."""
        start = self.dominant_conjugate(w)
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for i in range(self.rank):
                    y = self.reflect(x, i)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(seen, reverse=True)

    def parabolic_order(self, nodes: Iterable[int]) -> int:
        """Order of the reflection subgroup generated by the given simple
        reflections, from the exponents of the sub-root system."""
        nodes = set(nodes)
        counts: dict[int, int] = {}
        for a in self.positive_roots:
            if all(c == 0 for i, c in enumerate(a) if i not in nodes):
                h = sum(a)
                counts[h] = counts.get(h, 0) + 1
        order = 1
        for k, n_k in counts.items():
            n_next = counts.get(k + 1, 0)
            order *= (k + 1) ** (n_k - n_next)
        return order

    @cached_property
    def weyl_order(self) -> int:
        return self.parabolic_order(range(self.rank))

    def orbit_size(self, w: Weight) -> int:
        d = self.dominant_conjugate(w)
        return self.weyl_order // self.parabolic_order(i for i, c in enumerate(d) if c == 0)

    def dual(self, w: Weight) -> Weight:
        """Highest weight of the dual representation, -w0(w)."""
        return self.dominant_conjugate(tuple(-c for c in w))

    # -- representations ---------------------------------------------------

    def weyl_dim(self, lam: Weight) -> int:
        lam = tuple(lam)
        if any(c < 0 for c in lam):
            raise ValueError(f"weight {lam} is not dominant")
        shifted = tuple(c + 1 for c in lam)
        num = prod(self.coroot_pairings(shifted))
        den = prod(self.coroot_pairings(self.rho))
        return num // den

    def weight_system(self, lam: Weight, size_bound: int = DEFAULT_SIZE_BOUND) -> "WeightSystem":
        return _weight_system(self, tuple(lam), size_bound)


@dataclass(frozen=True)
class WeightSystem:
    """Dominant weights of an irreducible module with multiplicities."""

    highest: Weight
    dominant: tuple[tuple[Weight, int], ...]
    rs: RootSystem = field(repr=False, compare=False)

    @cached_property
    def multiplicity(self) -> dict[Weight, int]:
        return dict(self.dominant)

    def mult(self, w: Weight) -> int:
        return self.multiplicity.get(self.rs.dominant_conjugate(w), 0)

    def expanded(self) -> list[tuple[Weight, int]]:
        """Every weight with its multiplicity (full Weyl orbits)."""
        out = []
        for mu, m in self.dominant:
            out.extend((w, m) for w in self.rs.orbit(mu))
        return out

    def dimension(self) -> int:
        return sum(m * self.rs.orbit_size(mu) for mu, m in self.dominant)


def _dominant_weights_below(rs: RootSystem, lam: Weight) -> list[Weight]:
    seen = {lam}
    stack = [lam]
    roots = rs.positive_roots_wt
    while stack:
        mu = stack.pop()
        for a in roots:
            nu = tuple(x - y for x, y in zip(mu, a))
            if min(nu) >= 0 and nu not in seen:
                seen.add(nu)
                stack.append(nu)
    return sorted(seen, key=lambda w: (rs.level(w, lam), tuple(-c for c in w)))


@lru_cache(maxsize=256)
def _weight_system(rs: RootSystem, lam: Weight, size_bound: int) -> WeightSystem:
    dim = rs.weyl_dim(lam)
    if dim > size_bound:
        raise SizeBoundExceeded(f"dim V{lam} = {dim} exceeds bound {size_bound}")
    doms = _dominant_weights_below(rs, lam)
    mult: dict[Weight, int] = {lam: 1}
    lam_rho = tuple(c + 1 for c in lam)
    top = rs.norm2(lam_rho)
    pv = rs._root_pairing_vectors
    for mu in doms[1:]:
        total = 0
        for a, v in zip(rs.positive_roots_wt, pv):
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                m = mult.get(rs.dominant_conjugate(nu), 0)
                if not m:
                    break
                total += m * sum(x * y for x, y in zip(nu, v))
                k += 1
        denom = top - rs.norm2(tuple(c + 1 for c in mu))
        value = Fraction(2 * total) / denom
        if value.denominator != 1 or value < 0:
            raise ArithmeticError(f"Freudenthal produced {value} at {mu}")
        mult[mu] = int(value)
    dominant = tuple((mu, mult[mu]) for mu in doms if mult[mu])
    return WeightSystem(lam, dominant, rs)


@lru_cache(maxsize=None)
def build(type_tag: str) -> RootSystem:
    """Root system of one exceptional type, built by closure from simple roots."""
    tag = type_tag.upper()
    cartan, half = _cartan(tag)
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i
                p = 0
                while True:
                    cand = tuple(c - (p + 1) * (k == i) for k, c in enumerate(beta))
                    if cand in roots:
                        p += 1
                    else:
                        break
                pair = sum(beta[j] * cartan[j][i] for j in range(n))
                if p - pair > 0:
                    up = tuple(c + (k == i) for k, c in enumerate(beta))
                    if up not in roots:
                        roots.add(up)
                        nxt.append(up)
        layer = nxt
    ordered = sorted(roots, key=lambda a: (sum(a), a))
    inv = _invert(cartan)
    gram = tuple(tuple(inv[i][j] * half[j] for j in range(n)) for i in range(n))
    # half squared length of a root sum(a_i alpha_i)
    root_half = []
    for a in ordered:
        norm = sum(a[i] * a[j] * cartan[i][j] * half[j] for i in range(n) for j in range(n))
        root_half.append(norm // 2)
    m = max(half) // min(half)
    return RootSystem(
        type_tag=tag,
        rank=n,
        cartan=tuple(tuple(r) for r in cartan),
        half_lengths=tuple(half),
        positive_roots=tuple(ordered),
        root_half_lengths=tuple(root_half),
        m=m,
        gram=gram,
    )


def weyl_dim(rs: RootSystem, lam: Weight) -> int:
    return rs.weyl_dim(lam)


def pairing(rs: RootSystem, w: Weight, v: Weight) -> Fraction:
    return rs.pairing(w, v)


def weight_system(rs: RootSystem, lam: Weight, size_bound: int = DEFAULT_SIZE_BOUND) -> WeightSystem:
    return rs.weight_system(lam, size_bound)


def to_dominant(rs: RootSystem, w: Weight) -> tuple[Weight, int, bool]:
    return rs.to_dominant(w)


# ---------------------------------------------------------------------------
# labels


@lru_cache(maxsize=None)
def _labels() -> dict:
    text = resources.files("exbraid").joinpath("data/labels.json").read_text(encoding="utf-8")
    return json.loads(text)


def named_weight(type_tag: str, label: str) -> Weight:
    """Weight for a fundamental-weight label such as ``"l4"`` in the
    literature's numbering (see ``data/labels.json``)."""
    table = _labels()["fundamental"][type_tag.upper()]
    try:
        return tuple(table[label])
    except KeyError:
        raise ValueError(f"no label {label!r} for {type_tag}") from None


def en_pair(type_tag: str) -> tuple[Weight, Weight]:
    """(vector node, opposite end node) used for the E-series three-strand space."""
    entry = _labels()["en_series"][type_tag.upper()]
    return named_weight(type_tag, entry["vector"]), named_weight(type_tag, entry["partner"])


_TERM = re.compile(r"^\s*(\d*)\s*\*?\s*(l\d+)\s*$")


def parse_weight(type_tag: str, text: str) -> Weight:
    """Parse ``"1,0,0,1"``, ``"0"``, ``"l1"``, ``"2l1"`` or ``"l1+l4"``."""
    rank = build(type_tag).rank
    text = text.strip()
    if text in ("0", "1", ""):
        return (0,) * rank
    if re.fullmatch(r"-?\d+(\s*,\s*-?\d+)*", text):
        coords = tuple(int(c) for c in text.split(","))
        if len(coords) != rank:
            raise ValueError(f"{type_tag} weights have {rank} coordinates, got {len(coords)}")
        return coords
    total = [0] * rank
    for part in text.split("+"):
        m = _TERM.match(part)
        if not m:
            raise ValueError(f"cannot parse weight {text!r}")
        k = int(m.group(1) or 1)
        for i, c in enumerate(named_weight(type_tag, m.group(2))):
            total[i] += k * c
    return tuple(total)


def format_weight(type_tag: str, w: Weight) -> str:
    """Inverse of :func:`parse_weight` in label notation (``"0"`` for zero)."""
    table = _labels()["fundamental"][type_tag.upper()]
    by_coord = {tuple(v).index(1): k for k, v in table.items()}
    parts = []
    for i in sorted(by_coord, key=lambda i: int(by_coord[i][1:])):
        c = w[i]
        if c:
            parts.append(by_coord[i] if c == 1 else f"{c}{by_coord[i]}")
    return "+".join(parts) or "0"


def dump(rs: RootSystem) -> dict:
    """JSON-ready summary of the root data."""
    return {
        "type": rs.type_tag,
        "rank": rs.rank,
        "cartan": [list(r) for r in rs.cartan],
        "simple_roots": [list(a) for a in rs.simple_roots_wt],
        "positive_roots": [list(a) for a in rs.positive_roots],
        "rho": list(rs.rho),
        "theta0": list(rs.theta0),
        "theta1": list(rs.theta1),
        "m": rs.m,
    }
