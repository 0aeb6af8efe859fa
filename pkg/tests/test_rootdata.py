from fractions import Fraction

import pytest

from exbraid.rootdata import (
    TYPES,
    build,
    en_pair,
    format_weight,
    named_weight,
    parse_weight,
    weight_system,
    weyl_dim,
)

# -- independent oracle: roots by reflection closure in simple-root coordinates


def closure_roots(rs):
    n = rs.rank
    A = rs.cartan  # A[i][j] = <alpha_i, alpha_j^vee>
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]

    def reflect(beta, j):
        # <beta, alpha_j^vee> = sum_i beta_i A[i][j]
        c = sum(beta[i] * A[i][j] for i in range(n))
        return tuple(b - (c if k == j else 0) for k, b in enumerate(beta))

    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for b in frontier:
            for j in range(n):
                r = reflect(b, j)
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
    return sorted(r for r in seen if all(c >= 0 for c in r))


def form(rs, x, y):
    n = rs.rank
    return sum(Fraction(x[i] * y[j] * rs.cartan[i][j] * rs.half_lengths[j]) for i in range(n) for j in range(n))


def oracle(rs):
    pos = closure_roots(rs)
    rho = tuple(Fraction(sum(r[i] for r in pos), 2) for i in range(rs.rank))
    theta0 = max(pos, key=sum)
    short = min(form(rs, r, r) for r in pos)
    theta1 = max((r for r in pos if form(rs, r, r) == short), key=sum)
    return pos, rho, theta0, theta1


@pytest.mark.parametrize("tag,count,m", [("G2", 6, 3), ("F4", 24, 2), ("E6", 36, 1), ("E7", 63, 1), ("E8", 120, 1)])
def test_positive_roots_match_closure(tag, count, m):
    rs = build(tag)
    pos, *_ = oracle(rs)
    assert len(pos) == count == len(rs.positive_roots)
    assert sorted(tuple(r) for r in rs.positive_roots) == pos
    assert rs.m == m


def test_highest_roots():
    e8 = build("E8")
    assert e8.theta0 == e8.theta1
    f4 = build("F4")
    assert f4.norm2(f4.theta0) == 4 and f4.norm2(f4.theta1) == 2
    for tag in TYPES:
        rs = build(tag)
        _, _, t0, t1 = oracle(rs)
        assert rs.theta0 == rs.root_to_weight(t0)
        assert rs.theta1 == rs.root_to_weight(t1)


@pytest.mark.parametrize("tag", TYPES)
def test_rho_pairings_match_oracle(tag):
    rs = build(tag)
    pos, rho, t0, t1 = oracle(rs)
    assert rs.pairing(rs.rho, rs.theta0) == form(rs, rho, t0)
    assert rs.pairing(rs.rho, rs.theta1) == form(rs, rho, t1)
    assert rs.pairing(rs.zero, rs.theta0) == 0


def test_rho_pairing_values():
    g2, f4 = build("G2"), build("F4")
    # Coxeter-number identity <rho, theta_short> = h - 1 (short roots have length 2)
    assert g2.pairing(g2.rho, g2.theta1) == 5
    assert f4.pairing(f4.rho, f4.theta1) == 11
    # dual Coxeter identity <rho, theta0^vee> = h^vee - 1
    assert f4.pairing(f4.rho, f4.theta0) * 2 / f4.norm2(f4.theta0) == 8
    assert g2.pairing(g2.rho, g2.theta0) * 2 / g2.norm2(g2.theta0) == 3
    # with the length normalization the long-root pairings themselves are
    assert g2.pairing(g2.rho, g2.theta0) == 9
    assert f4.pairing(f4.rho, f4.theta0) == 16


@pytest.mark.parametrize("tag", TYPES)
def test_rho_on_simple_coroots(tag):
    rs = build(tag)
    assert rs.rho == (1,) * rs.rank
    for i in range(rs.rank):
        alpha = tuple(int(i == j) for j in range(rs.rank))
        assert rs.pairing(rs.rho, rs.root_to_weight(alpha)) * 2 / rs.norm2(rs.root_to_weight(alpha)) == 1


def test_weyl_dim_examples():
    assert weyl_dim(build("G2"), named_weight("G2", "l1")) == 7
    assert weyl_dim(build("F4"), named_weight("F4", "l4")) == 52
    assert weyl_dim(build("F4"), named_weight("F4", "l1")) == 26
    assert weyl_dim(build("E8"), named_weight("E8", "l8")) == 248


def test_weight_system_examples():
    g2 = build("G2")
    ws = weight_system(g2, named_weight("G2", "l1")).expanded()
    assert len(ws) == 7 and all(m == 1 for _, m in ws)
    assert sum(1 for w, _ in ws if not any(w)) == 1
    e8 = build("E8")
    ws = weight_system(e8, (0,) * 7 + (1,))
    zero = ws.multiplicity[(0,) * 8]
    assert zero == 8
    assert ws.dimension() - zero == 240
    assert dict(weight_system(g2, (0, 0)).dominant) == {(0, 0): 1}


def fundamentals(tag):
    rs = build(tag)
    return [tuple(int(i == j) for j in range(rs.rank)) for i in range(rs.rank)]


@pytest.mark.parametrize("tag", ["G2", "F4", "E6"])
def test_weight_system_size_equals_weyl_dim(tag):
    rs = build(tag)
    for lam in fundamentals(tag):
        ws = weight_system(rs, lam)
        assert sum(m for _, m in ws.expanded()) == weyl_dim(rs, lam)


@pytest.mark.parametrize("tag,lam", [("E7", (0,) * 6 + (1,)), ("E7", (1,) + (0,) * 6), ("E8", (1,) + (0,) * 7)])
def test_weight_system_dimension_spot_checks(tag, lam):
    rs = build(tag)
    assert weight_system(rs, lam).dimension() == weyl_dim(rs, lam)


def test_multiplicities_are_weyl_invariant():
    rs = build("F4")
    ws = weight_system(rs, (1, 0, 0, 1))
    for mu, m in ws.dominant:
        for w in rs.orbit(mu)[:20]:
            assert ws.mult(w) == m


def test_to_dominant_examples():
    g2 = build("G2")
    l1 = named_weight("G2", "l1")
    assert g2.to_dominant(l1) == (l1, 1, False)
    # s_1 . l1 = s_1(l1 + rho) - rho
    shifted = g2.reflect((2, 1), 0)
    w = tuple(c - 1 for c in shifted)
    mu, sign, wall = g2.to_dominant(w)
    assert (mu, sign, wall) == (l1, -1, False)
    # -rho + (0, 1): fixed by the first reflection
    assert g2.to_dominant((-1, 0))[2] is True


@pytest.mark.parametrize("tag", TYPES)
def test_to_dominant_idempotent(tag):
    rs = build(tag)
    for lam in fundamentals(tag):
        for w in rs.orbit(lam)[:30]:
            mu, _, wall = rs.to_dominant(w)
            if not wall:
                assert rs.to_dominant(mu) == (mu, 1, False)


def test_label_map():
    # F4 literature numbering runs opposite to the internal one
    assert named_weight("F4", "l1") == (0, 0, 0, 1)
    assert named_weight("F4", "l4") == (1, 0, 0, 0)
    assert en_pair("E6") == (named_weight("E6", "l1"), named_weight("E6", "l6"))
    assert en_pair("E7") == (named_weight("E7", "l7"), named_weight("E7", "l1"))
    assert en_pair("E8") == (named_weight("E8", "l8"), named_weight("E8", "l1"))
    for tag in TYPES:
        rs = build(tag)
        for i in range(1, rs.rank + 1):
            w = named_weight(tag, f"l{i}")
            assert parse_weight(tag, format_weight(tag, w)) == w


def test_parse_weight_forms():
    assert parse_weight("F4", "l1+l4") == (1, 0, 0, 1)
    assert parse_weight("F4", "2l1") == (0, 0, 0, 2)
    assert parse_weight("F4", "0") == (0, 0, 0, 0)
    assert parse_weight("G2", "3,1") == (3, 1)
    with pytest.raises(ValueError):
        parse_weight("G2", "1,2,3")
    with pytest.raises(ValueError):
        parse_weight("G2", "l9")
