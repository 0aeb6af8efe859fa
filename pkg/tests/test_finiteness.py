from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exbraid.braid import Spectrum, en_series_spectrum, reference_spectrum, sigma_spectrum
from exbraid.category import CategorySpec, qpower
from exbraid.cyclo import CycloNumber, make_root_of_unity
from exbraid.finiteness import (
    ESCALATE,
    FINITE,
    INCONCLUSIVE,
    INFINITE,
    IRRED_CITED,
    IRRED_TW,
    UNDECIDABLE_OU,
    Irreducibility,
    Verdict,
    analyze,
    analyze_object,
    decide,
    galois_class_po7,
    match_imprimitive_forms,
    projective_order,
    tw_irreducibility,
)
from exbraid.rootdata import named_weight

TW = Irreducibility("TW")
CITED = Irreducibility("cited", "generic irreducibility")


def z(n, k=1):
    return make_root_of_unity(n, k)


def brute_po(vals):
    n = 2
    for v in vals:
        n = n * v.conductor // gcd(n, v.conductor)
    powers = list(vals)
    for t in range(1, n + 1):
        if all(p == powers[0] for p in powers):
            return t
        powers = [p * v for p, v in zip(powers, vals)]
    return None


def fixture_spectra():
    out = []
    for ell in range(18, 41):
        out.append(("G2", ell, sigma_spectrum(CategorySpec("G2", ell), named_weight("G2", "l1"))))
    for ell in (22, 26, 28, 30):
        out.append(("F4", ell, sigma_spectrum(CategorySpec("F4", ell), named_weight("F4", "l1"))))
    for ell in (15, 17, 19, 21, 23):
        out.append(("F4", ell, sigma_spectrum(CategorySpec("F4", ell), named_weight("F4", "l1"))))
    out.append(("F4", 24, sigma_spectrum(CategorySpec("F4", 24), named_weight("F4", "l4"))))
    for n, ell in ((6, 14), (6, 20), (7, 21), (7, 26), (8, 34), (8, 40)):
        out.append((f"E{n}", ell, en_series_spectrum(n, CategorySpec(f"E{n}", ell))))
    return out


FIXTURES = fixture_spectra()


def test_projective_order_examples():
    assert projective_order([CycloNumber.rational(1), z(4)]) == 4
    g18 = sigma_spectrum(CategorySpec("G2", 18), named_weight("G2", "l1"))
    assert projective_order(g18) == 18
    g21 = sigma_spectrum(CategorySpec("G2", 21), named_weight("G2", "l1"))
    assert projective_order(g21) == 42
    assert projective_order([CycloNumber.rational(1), CycloNumber.rational(2)]) is None


@pytest.mark.parametrize("tag,ell,s", FIXTURES, ids=[f"{t}-{e}" for t, e, _ in FIXTURES])
def test_projective_order_matches_brute_force(tag, ell, s):
    assert projective_order(s) == brute_po(list(s.values))


def test_g2_projective_order_rule():
    for tag, ell, s in FIXTURES:
        if tag == "G2":
            assert projective_order(s) == (2 * ell if ell % 2 else ell)


def test_form_matching_examples():
    alpha = z(5)
    forms = match_imprimitive_forms([CycloNumber.rational(1), CycloNumber.rational(-1), alpha])
    assert [m.form for m in forms] == ["pm-chi-alpha"]
    r, s = z(12), z(12) / z(6)  # u = r / s of order 6
    forms = match_imprimitive_forms([r, -r, s, -s])
    assert any(m.form == "pm-r-pm-s" and m.ou == 6 for m in forms)
    chi, w = z(7), z(3)
    forms = match_imprimitive_forms([chi, chi * w, chi * w * w, z(5)])
    assert any(m.form == "chi-omega-alpha" for m in forms)
    for tag, ell, spec in FIXTURES:
        if tag == "G2":
            assert match_imprimitive_forms(spec) == []


def test_po7_galois_classes():
    one = CycloNumber.rational(1)
    assert galois_class_po7([one, z(7), z(7, 2)]) == "even-k"
    assert galois_class_po7([one, z(7), z(7, 3)]) == "odd-k"
    c = z(11, 4)
    assert galois_class_po7([c, c * z(7), c * z(7, 2)]) == "even-k"
    assert galois_class_po7([one, z(5), z(5, 2)]) == "not-applicable"


def test_tw_examples():
    r = tw_irreducibility(CategorySpec("G2", 18), named_weight("G2", "l1"))
    assert r.certified and r.d == 4
    r = tw_irreducibility(CategorySpec("F4", 24), named_weight("F4", "l1"))
    assert not r.certified and r.reason == "repeated eigenvalues"
    r = tw_irreducibility(CategorySpec("F4", 24), named_weight("F4", "l4"))
    assert r.certified and r.d == 4


def test_decide_examples():
    g21 = sigma_spectrum(CategorySpec("G2", 21), named_weight("G2", "l1"))
    v = decide(g21, 4, TW)
    assert v.outcome == INFINITE and "RT(d)(iii)" in v.certificate and v.po == 42
    assert IRRED_TW in v.assumptions
    g24 = sigma_spectrum(CategorySpec("G2", 24), named_weight("G2", "l1"))
    v = decide(g24, 4, TW)
    assert v.outcome == INCONCLUSIVE and v.reason == ESCALATE
    f22 = sigma_spectrum(CategorySpec("F4", 22), named_weight("F4", "l1"))
    v = decide(f22, 5, TW)
    assert v.outcome == INFINITE and "RT(d)(iv)" in v.certificate and v.po == 22
    e14 = en_series_spectrum(6, CategorySpec("E6", 14))
    v = decide(e14, 3, CITED)
    assert v.outcome == INFINITE and "RT(d)(ii)" in v.certificate and "RT(c)-excluded" in v.certificate
    assert v.po >= 8 and IRRED_CITED in v.assumptions


def test_decide_clauses_a_and_b():
    one = CycloNumber.rational(1)
    v = decide([one, one, z(5)], 3, TW)
    assert v.outcome == INFINITE and "RT(a)" in v.certificate
    v = decide([one, CycloNumber.rational(2)], 2, TW)
    assert v.outcome == INFINITE and "RT(a)" in v.certificate
    v = decide([one, z(5), z(5, 2)], 3, TW)
    assert v.outcome == FINITE and "RT(b)" in v.certificate
    # (b) wins over the imprimitive pattern {+-chi, alpha}
    v = decide([one, -one, z(4)], 3, TW)
    assert v.outcome == FINITE and v.certificate[-1] == "RT(b)"
    # po 10: the imprimitive pattern says finite, the primitive branch infinite
    v = decide([one, -one, z(5)], 3, TW)
    assert v.outcome == INCONCLUSIVE and v.reason == "primitivity-undetermined"


def test_decide_imprimitive_cases():
    r = z(7)
    s = r / z(5)  # o(u) = 5
    v = decide([r, -r, s, -s], 4, TW)
    assert v.outcome == INCONCLUSIVE
    assert v.reason in (UNDECIDABLE_OU, "primitivity-undetermined")


def test_decide_requires_evidence_and_valid_d():
    s = reference_spectrum("G2-l1", 21)
    with pytest.raises(ValueError):
        decide(s, 4, None)
    with pytest.raises(ValueError):
        decide(s, 3, TW)
    with pytest.raises(ValueError):
        Verdict(INFINITE)
    with pytest.raises(ValueError):
        Verdict(INCONCLUSIVE, ("RT(b)",))


def _outcome(v):
    return (v.outcome, v.certificate, v.reason, v.po)


@pytest.mark.parametrize("tag,ell,s", FIXTURES, ids=[f"{t}-{e}" for t, e, _ in FIXTURES])
def test_decide_scale_invariant(tag, ell, s):
    if not s.is_distinct():
        return
    base = decide(s, len(s), TW)
    for sign, e in ((-1, 0), (1, 3), (-1, 7), (1, -11)):
        assert _outcome(decide(s.scaled(sign, e), len(s), TW)) == _outcome(base)
    c = z(9, 2)
    assert _outcome(decide([c * v for v in s.values], len(s), TW)) == _outcome(base)


@pytest.mark.parametrize("tag,ell,s", FIXTURES, ids=[f"{t}-{e}" for t, e, _ in FIXTURES])
def test_decide_galois_equivariant(tag, ell, s):
    if not s.is_distinct():
        return
    base = decide(s, len(s), TW).outcome
    n = 1
    for v in s.values:
        n = n * v.conductor // gcd(n, v.conductor)
    for j in range(1, n):
        if gcd(j, n) != 1:
            continue
        conj = [v.lift(n).galois(j) for v in s.values]
        out = decide(conj, len(s), TW).outcome
        if INCONCLUSIVE not in (base, out):
            assert out == base


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.integers(6, 40), st.data())
def test_projective_order_random_spectra(d, n, data):
    ks = data.draw(st.lists(st.integers(0, n - 1), min_size=d, max_size=d))
    vals = [z(n, k) for k in ks]
    assert projective_order(vals) == brute_po(vals)


def test_analyze_examples():
    assert analyze(CategorySpec("G2", 26)).outcome == INFINITE
    r = analyze(CategorySpec("E8", 33))
    assert r.outcome == INFINITE
    assert "citation:conjugate-f4-22" in r.verdict.certificate and "RT(d)(iv)" in r.verdict.certificate
    assert r.steps[0].algebra == "F4" and r.steps[0].ell == 22
    r = analyze(CategorySpec("G2", 8))
    assert r.status == "excluded-weakly-integral" and r.verdict is None


def test_analyze_escalations():
    r = analyze(CategorySpec("G2", 24))
    assert r.outcome == INFINITE and "matrix-escalation" in r.verdict.certificate
    assert r.escalation["jmax"] == 24 and r.escalation["result"] == "no-proportional-power"
    r = analyze(CategorySpec("F4", 24))
    assert r.outcome == INFINITE and r.object == named_weight("F4", "l4")
    assert r.escalation["matched_spectrum"]
    assert r.steps[0].verdict.reason == "uncovered"


def test_analyze_f4_15_uses_second_object():
    r = analyze(CategorySpec("F4", 15))
    assert r.outcome == INFINITE and r.object == named_weight("F4", "l4") and r.d == 2
    first = r.steps[0]
    assert first.object == named_weight("F4", "l1") and first.d == 4 and first.outcome == INCONCLUSIVE


def test_analyze_object_matches_cli_example():
    r = analyze_object(CategorySpec("F4", 22), named_weight("F4", "l1"))
    assert r.outcome == INFINITE and r.verdict.certificate[-1] == "RT(d)(iv)"
