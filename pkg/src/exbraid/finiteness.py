"""Deciding whether the image of B_3 on a small Hom space is finite.

The decision follows the known classification of irreducible B_3 images
of dimension 2 to 5 (its clauses are tagged ``RT(...)`` below), applied to
the eigenvalue spectrum of sigma_1.  Irreducibility is an input: it comes
either from the distinct-eigenvalue criterion for self-dual objects
(``TW-irreducibility``), checked here, or from a cited result.

Certificates are tuples of fixed strings:

    RT(a) RT(b) RT(c)(i) RT(c)(ii) RT(c)-excluded
    RT(d)(i) RT(d)(ii) RT(d)(iii) RT(d)(iv)
    TW-irreducibility matrix-escalation RT-power-bound
    citation:fibonacci citation:fibonacci-ising-product
    citation:conjugate-f4-22 citation:bmw-irreducibility

Inconclusive verdicts carry one reason:

    escalate-to-matrix primitivity-undetermined undecidable-o(u) uncovered
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Sequence

from .braid import (
    Spectrum,
    en_labels,
    en_series_derived,
    en_series_spectrum,
    hom_spectrum,
    in_stable_range,
    same_up_to_scale,
    sigma_spectrum,
)
from .category import CategorySpec, rank
from .cyclo import CycloNumber, make_root_of_unity
from .fusion import tensor_square_truncated
from .matrixrep import SpectrumMismatch, escalate
from .rootdata import Weight, format_weight, named_weight

FINITE = "Finite"
INFINITE = "Infinite"
INCONCLUSIVE = "Inconclusive"

RT_A = "RT(a)"
RT_B = "RT(b)"
RT_C1 = "RT(c)(i)"
RT_C2 = "RT(c)(ii)"
RT_C_EXCLUDED = "RT(c)-excluded"
RT_D = {2: "RT(d)(i)", 3: "RT(d)(ii)", 4: "RT(d)(iii)", 5: "RT(d)(iv)"}
TW = "TW-irreducibility"
MATRIX = "matrix-escalation"
RT_POWER_BOUND = "RT-power-bound"
CITE_FIBONACCI = "citation:fibonacci"
CITE_FIB_ISING = "citation:fibonacci-ising-product"
CITE_CONJUGATE_F4 = "citation:conjugate-f4-22"
CITE_BMW = "citation:bmw-irreducibility"

IRRED_TW = "irreducibility: TW-verified"
IRRED_CITED = "irreducibility: cited"
PRIM_EXCLUDED = "primitivity: pattern-excluded"
PRIM_UNDETERMINED = "primitivity: undetermined"

ESCALATE = "escalate-to-matrix"
PRIMITIVITY_UNDETERMINED = "primitivity-undetermined"
UNDECIDABLE_OU = "undecidable-o(u)"
UNCOVERED = "uncovered"

EXCEPTIONAL_PO_D4 = frozenset({6, 7, 8, 9, 10, 12, 15, 20, 24})


@dataclass(frozen=True)
class Verdict:
    outcome: str
    certificate: tuple[str, ...] = ()
    assumptions: tuple[str, ...] = ()
    reason: str | None = None
    po: int | None = None
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.outcome in (FINITE, INFINITE) and not self.certificate:
            raise ValueError("a decided verdict needs a certificate")
        if self.outcome == INCONCLUSIVE and not self.reason:
            raise ValueError("an inconclusive verdict needs a reason")

    def to_json(self) -> dict:
        doc = {
            "outcome": self.outcome,
            "certificate": list(self.certificate),
            "assumptions": list(self.assumptions),
        }
        if self.reason:
            doc["reason"] = self.reason
        if self.notes:
            doc["notes"] = list(self.notes)
        return doc


@dataclass(frozen=True)
class Irreducibility:
    """Evidence that B_3 acts irreducibly; ``source`` is "TW" or "cited"."""

    source: str
    detail: str = ""

    @property
    def tag(self) -> str:
        return IRRED_TW if self.source == "TW" else IRRED_CITED


def _values(s) -> list[CycloNumber]:
    return list(s.values) if isinstance(s, Spectrum) else list(s)


# -- projective order ---------------------------------------------------------


def projective_order(s) -> int | None:
    """Least t with all t-th powers equal; None when no such t exists."""
    vals = _values(s)
    if not vals:
        raise ValueError("empty spectrum")
    first = vals[0]
    t = 1
    for v in vals[1:]:
        o = (v / first).root_of_unity_order()
        if o is None:
            return None
        t = lcm(t, o)
    return t


# -- imprimitivity patterns ---------------------------------------------------


def _is_primitive_cube_root(x: CycloNumber) -> bool:
    return (x * x + x + 1).is_zero()


def _order_pm(u: CycloNumber) -> int | None:
    a, b = u.root_of_unity_order(), (-u).root_of_unity_order()
    if a is None or b is None:
        return None
    return max(a, b)


@dataclass(frozen=True)
class FormMatch:
    form: str  # "pm-chi-alpha", "chi-omega-alpha", "pm-r-pm-s"
    params: dict = field(compare=False)
    ou: int | None = None  # o(u) for "pm-r-pm-s"


def match_imprimitive_forms(s) -> list[FormMatch]:
    """Every way the spectrum fits one of the imprimitive shapes."""
    vals = _values(s)
    d = len(vals)
    out: list[FormMatch] = []
    if d == 3:
        for i in range(3):
            for j in range(i + 1, 3):
                if (vals[i] + vals[j]).is_zero():
                    k = 3 - i - j
                    out.append(FormMatch("pm-chi-alpha", {"chi": vals[i], "alpha": vals[k]}))
    if d == 4:
        for a in range(4):
            rest = [vals[i] for i in range(4) if i != a]
            x, y, z = rest
            w = y / x
            if _is_primitive_cube_root(w) and z == w * y:
                out.append(FormMatch("chi-omega-alpha", {"chi": x, "omega": w, "alpha": vals[a]}))
            elif _is_primitive_cube_root(z / x) and y == (z / x) * z:
                out.append(FormMatch("chi-omega-alpha", {"chi": x, "omega": z / x, "alpha": vals[a]}))
        for pairing in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
            (i, j), (k, m) = pairing
            if (vals[i] + vals[j]).is_zero() and (vals[k] + vals[m]).is_zero():
                u = vals[i] / vals[k]
                out.append(FormMatch("pm-r-pm-s", {"r": vals[i], "s": vals[k], "u": u}, _order_pm(u)))
    return out


def galois_class_po7(s) -> str:
    """"even-k", "odd-k" or "not-applicable" for a three-term spectrum."""
    vals = _values(s)
    if len(vals) != 3:
        return "not-applicable"
    a, b = (vals[1] / vals[0]).reduced(), (vals[2] / vals[0]).reduced()
    z7 = make_root_of_unity(7, 1)
    for first, second in ((a, b), (b, a)):
        if first.conductor != 7 or second.conductor != 7:
            continue
        for j in range(1, 7):
            if first.galois(j) == z7:
                image = second.galois(j)
                for k in range(2, 7):
                    if image == make_root_of_unity(7, k):
                        return "even-k" if k % 2 == 0 else "odd-k"
    return "not-applicable"


# -- irreducibility -----------------------------------------------------------


@dataclass(frozen=True)
class TWResult:
    certified: bool
    d: int | None = None
    reason: str | None = None
    spectrum: Spectrum | None = None

    def evidence(self) -> Irreducibility | None:
        return Irreducibility("TW", f"d={self.d}") if self.certified else None


def tw_irreducibility(spec: CategorySpec, z: Weight) -> TWResult:
    """Irreducibility of B_3 on Hom(Z, Z^3): Z self-dual, Z (x) Z multiplicity
    free, and sigma_1 acting on its summands by distinct scalars."""
    z = spec.require(z)
    if spec.rs.dual(z) != z:
        return TWResult(False, reason="not self-dual")
    sq = tensor_square_truncated(spec, z)
    if not sq.is_multiplicity_free():
        return TWResult(False, reason="tensor square not multiplicity free")
    spectrum = sigma_spectrum(spec, z)
    if not spectrum.is_distinct():
        return TWResult(False, reason="repeated eigenvalues", spectrum=spectrum)
    return TWResult(True, d=len(spectrum), spectrum=spectrum)


# -- the cascade ----------------------------------------------------------------


def _primitive_branch(vals, d: int, po: int) -> tuple[str, str | None, str]:
    """(outcome, reason, clause) under the assumption that G is primitive."""
    clause = RT_D[d]
    if d == 2:
        return INFINITE, None, clause
    if d == 3:
        if po >= 8:
            return INFINITE, None, clause
        if po == 7:
            cls = galois_class_po7(vals)
            if cls == "even-k":
                return INFINITE, None, clause
            if cls == "odd-k":
                return FINITE, None, clause
        return INCONCLUSIVE, UNCOVERED, clause
    if d == 4:
        if po not in EXCEPTIONAL_PO_D4:
            return INFINITE, None, clause
        return INCONCLUSIVE, ESCALATE, clause
    if po in (7, 8) or po >= 13:
        return INFINITE, None, clause
    return INCONCLUSIVE, UNCOVERED, clause


def _imprimitive_branch(match: FormMatch) -> tuple[str, str | None, str]:
    if match.form in ("pm-chi-alpha", "chi-omega-alpha"):
        return FINITE, None, RT_C1
    ou = match.ou
    if ou is None or ou in (7, 8, 9) or ou >= 11:
        return INFINITE, None, RT_C2
    if ou == 6:
        return FINITE, None, RT_C2
    if ou in (5, 10):
        return INCONCLUSIVE, UNDECIDABLE_OU, RT_C2
    return INCONCLUSIVE, UNCOVERED, RT_C2


def decide(s, d: int | None = None, evidence: Irreducibility | None = None) -> Verdict:
    """Run the cascade on a spectrum of a d-dimensional irreducible image."""
    vals = _values(s)
    if d is None:
        d = len(vals)
    if d != len(vals):
        raise ValueError(f"d={d} but the spectrum has {len(vals)} values")
    if not 2 <= d <= 5:
        raise ValueError(f"d={d} is outside 2..5")
    if evidence is None:
        raise ValueError("irreducibility evidence is required")
    base = (TW,) if evidence.source == "TW" else ()
    assumptions = (evidence.tag,)

    # (a)
    if len(set(vals)) < d:
        return Verdict(INFINITE, base + (RT_A,), assumptions, notes=("repeated eigenvalue",))
    po = projective_order(vals)
    if po is None:
        return Verdict(INFINITE, base + (RT_A,), assumptions, notes=("eigenvalue ratio of infinite order",))
    # (b)
    if po <= 5:
        return Verdict(FINITE, base + (RT_B,), assumptions, po=po)

    matches = match_imprimitive_forms(vals)
    prim = _primitive_branch(vals, d, po)
    if not matches:
        outcome, reason, clause = prim
        cert = base + (RT_C_EXCLUDED, clause)
        assumptions = assumptions + (PRIM_EXCLUDED,)
        if outcome == INCONCLUSIVE:
            return Verdict(INCONCLUSIVE, cert, assumptions, reason=reason, po=po)
        return Verdict(outcome, cert, assumptions, po=po)

    branches = [_imprimitive_branch(m) for m in matches] + [prim]
    outcomes = {b[0] for b in branches}
    clauses = tuple(dict.fromkeys(b[2] for b in branches))
    assumptions = assumptions + (PRIM_UNDETERMINED,)
    forms = tuple(m.form for m in matches)
    if len(outcomes) == 1 and INCONCLUSIVE not in outcomes:
        return Verdict(outcomes.pop(), base + clauses, assumptions, po=po, notes=forms)
    return Verdict(INCONCLUSIVE, base + clauses, assumptions, reason=PRIMITIVITY_UNDETERMINED, po=po, notes=forms)


# -- end-to-end -----------------------------------------------------------------


@dataclass(frozen=True)
class CaseReport:
    algebra: str
    ell: int
    status: str  # "decided", "excluded-weakly-integral", "excluded-trivial"
    rank: int
    object: Weight | None = None
    object_label: str | None = None
    d: int | None = None
    spectrum: Spectrum | None = None
    po: int | None = None
    verdict: Verdict | None = None
    escalation: dict | None = None
    notes: tuple[str, ...] = ()
    steps: tuple["CaseReport", ...] = ()

    @property
    def outcome(self) -> str | None:
        return self.verdict.outcome if self.verdict else None

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "ell": self.ell,
            "status": self.status,
            "rank": self.rank,
            "object": list(self.object) if self.object is not None else None,
            "object_label": self.object_label,
            "d": self.d,
            "spectrum": self.spectrum.to_json() if self.spectrum else None,
            "po": self.po,
            "verdict": self.verdict.outcome if self.verdict else None,
            "certificate": list(self.verdict.certificate) if self.verdict else [],
            "assumptions": list(self.verdict.assumptions) if self.verdict else [],
            "reason": self.verdict.reason if self.verdict else None,
            "escalation": self.escalation,
            "notes": list(self.notes),
            "steps": [s.to_json() for s in self.steps],
        }


_CITATIONS = {
    ("G2", 15): (CITE_FIBONACCI, "rank 2 Fibonacci category"),
    ("G2", 10): (CITE_FIBONACCI, "contains the Fibonacci category as a modular subcategory"),
    ("E7", 20): (CITE_FIB_ISING, "product of the Fibonacci and Ising categories"),
}


def _label(spec: CategorySpec, w: Weight) -> str:
    return format_weight(spec.algebra, w)


def _escalate_report(spec, base: CaseReport, spectrum: Spectrum, verdict: Verdict, jmax) -> CaseReport:
    try:
        cert = escalate(spec.ell, jmax, spectrum)
    except SpectrumMismatch as exc:
        v = Verdict(INCONCLUSIVE, verdict.certificate, verdict.assumptions, reason=ESCALATE, po=verdict.po, notes=(str(exc),))
        return _replace(base, verdict=v)
    if cert.infinite:
        v = Verdict(
            INFINITE,
            verdict.certificate + (MATRIX, RT_POWER_BOUND),
            verdict.assumptions,
            po=verdict.po,
        )
    else:
        v = Verdict(INCONCLUSIVE, verdict.certificate + (MATRIX,), verdict.assumptions, reason=ESCALATE, po=verdict.po)
    return _replace(base, verdict=v, escalation=cert.to_json())


def _replace(report: CaseReport, **kw) -> CaseReport:
    from dataclasses import replace

    return replace(report, **kw)


def analyze_object(spec: CategorySpec, z: Weight, jmax: int | None = None, allow_matrix: bool = True) -> CaseReport:
    """TW criterion, spectrum and cascade for one self-dual label."""
    z = spec.require(z)
    r = rank(spec)
    tw = tw_irreducibility(spec, z)
    if not tw.certified:
        v = Verdict(INCONCLUSIVE, (), (), reason=UNCOVERED, notes=(f"TW refused: {tw.reason}",))
        return CaseReport(spec.algebra, spec.ell, "decided", r, z, _label(spec, z), spectrum=tw.spectrum, verdict=v)
    spectrum = tw.spectrum
    verdict = decide(spectrum, tw.d, tw.evidence())
    report = CaseReport(
        spec.algebra, spec.ell, "decided", r, z, _label(spec, z), tw.d, spectrum, verdict.po, verdict
    )
    if allow_matrix and verdict.outcome == INCONCLUSIVE and verdict.reason == ESCALATE and tw.d == 4:
        report = _escalate_report(spec, report, spectrum, verdict, jmax)
    return report


def _fallback_objects(spec: CategorySpec, tried: Weight, jmax) -> CaseReport | None:
    """Try the other self-dual labels, smallest first, for a decided verdict."""
    from .category import alcove

    for w in alcove(spec):
        if w == tried or not any(w) or spec.rs.dual(w) != w:
            continue
        try:
            rep = analyze_object(spec, w, jmax)
        except ValueError:
            continue
        if rep.outcome in (FINITE, INFINITE):
            return rep
    return None


def analyze(spec: CategorySpec, jmax: int | None = None) -> CaseReport:
    """Verdict for the designated object of C(g, q, ell)."""
    r = rank(spec)
    if r < 2:
        return CaseReport(spec.algebra, spec.ell, "excluded-trivial", r)
    from .classify import weakly_integral

    if weakly_integral(spec):
        return CaseReport(spec.algebra, spec.ell, "excluded-weakly-integral", r)

    key = (spec.algebra, spec.ell)
    if key in _CITATIONS:
        tag, note = _CITATIONS[key]
        return CaseReport(spec.algebra, spec.ell, "decided", r, verdict=Verdict(INFINITE, (tag,), notes=(note,)))
    if key == ("E8", 33):
        sub = analyze(CategorySpec("F4", 22), jmax)
        if sub.outcome == INFINITE:
            v = Verdict(INFINITE, (CITE_CONJUGATE_F4,) + sub.verdict.certificate, sub.verdict.assumptions,
                        notes=("conjugate to C(F4, q, 22)",))
        else:
            v = Verdict(INCONCLUSIVE, (CITE_CONJUGATE_F4,), reason=UNCOVERED)
        return CaseReport(spec.algebra, spec.ell, "decided", r, verdict=v, steps=(sub,))

    if spec.algebra.startswith("E"):
        return _analyze_en(spec, r)

    z = named_weight(spec.algebra, "l1")
    report = analyze_object(spec, z, jmax)
    if report.outcome in (FINITE, INFINITE):
        return report
    if spec.algebra == "F4" and spec.ell == 24:
        alt = analyze_object(spec, named_weight("F4", "l4"), jmax)
        return _replace(alt, steps=(report,), notes=("l1 has repeated eigenvalues; using l4",))
    alt = _fallback_objects(spec, z, jmax)
    if alt is not None:
        return _replace(alt, steps=(report,), notes=(f"fallback from {report.object_label}",))
    return report


def _analyze_en(spec: CategorySpec, r: int) -> CaseReport:
    n = int(spec.algebra[1])
    if not in_stable_range(spec):
        v = Verdict(INCONCLUSIVE, (), (), reason=UNCOVERED, notes=("below the stable range",))
        return CaseReport(spec.algebra, spec.ell, "decided", r, verdict=v)
    v_label, target = en_labels(spec)
    spectrum = en_series_spectrum(n, spec)
    derived = en_series_derived(spec)
    notes = []
    if not same_up_to_scale(spectrum, derived):
        notes.append("red flag: fusion-derived spectrum differs from the E-series formula")
    if not 2 * n - 3 < spec.ell - 2:
        verdict = Verdict(INCONCLUSIVE, (), (), reason=UNCOVERED, notes=("irreducibility condition fails",))
    else:
        verdict = decide(spectrum, 3, Irreducibility("cited", "BMW specialization"))
        verdict = Verdict(
            verdict.outcome,
            (CITE_BMW,) + verdict.certificate if verdict.certificate else (),
            verdict.assumptions,
            verdict.reason,
            verdict.po,
            verdict.notes,
        ) if verdict.outcome != INCONCLUSIVE else verdict
    return CaseReport(
        spec.algebra,
        spec.ell,
        "decided",
        r,
        target,
        f"Hom({_label(spec, target)}, {_label(spec, v_label)}^3)",
        3,
        spectrum,
        verdict.po,
        verdict,
        notes=tuple(notes),
    )
