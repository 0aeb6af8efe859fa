"""Command-line driver: ``exbraid <verb> [options]``.

Exit codes: 0 success, 1 usage error, 2 computation error, 3 regression
mismatch in ``report``, 4 internal red flag (two exact routes disagreed or a
truncated multiplicity went negative).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources

from . import braid, cache, category, classify, expected, finiteness, fusion, matrixrep
from .category import AlcoveError, CategorySpec, InternalInconsistency
from .rootdata import TYPES, SizeBoundExceeded, format_weight, named_weight, parse_weight

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_REGRESSION, EXIT_RED_FLAG = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    algebras: tuple[str, ...]
    ells: tuple[int, ...] | None
    object: str | None
    target: str | None
    fmt: str
    cache_dir: str | None
    size_bound: int
    jmax: int | None
    sections: tuple[str, ...] = ()


# -- argument handling ---------------------------------------------------------


def parse_range(text: str) -> tuple[int, ...]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi) if sep else int(lo)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected A..B") from None
    if a < 2 or b < a:
        raise UsageError(f"range {text!r} is empty or starts below 2")
    return tuple(range(a, b + 1))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--cache-dir", default=None, help=f"cache directory (default: ${cache.ENV_VAR})")
    common.add_argument("--size-bound", type=int, default=fusion.DEFAULT_SIZE_BOUND,
                        help="largest module dimension whose weights are expanded")

    levels = _Parser(add_help=False)
    levels.add_argument("--algebra", type=str.upper, choices=TYPES, metavar="{g2,f4,e6,e7,e8}")
    group = levels.add_mutually_exclusive_group()
    group.add_argument("--ell", type=int)
    group.add_argument("--ell-range")

    parser = _Parser(prog="exbraid", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("alcove", parents=[common, levels], help="labels and FP-dimensions")
    p = sub.add_parser("fpdim", parents=[common, levels], help="FP-dimension of one object")
    p.add_argument("--object", required=True)
    sub.add_parser("classify", parents=[common, levels], help="weakly integral cases")
    p = sub.add_parser("spectrum", parents=[common, levels], help="braiding eigenvalues")
    p.add_argument("--object")
    p.add_argument("--target", help="restrict to Hom(target, V^3)")
    p = sub.add_parser("decide", parents=[common, levels], help="finiteness verdict")
    p.add_argument("--object")
    p.add_argument("--jmax", type=int)
    p = sub.add_parser("verify-matrix", parents=[common, levels], help="braid relation and power check")
    p.add_argument("--jmax", type=int)
    p = sub.add_parser("report", parents=[common], help="regression report against published values")
    p.add_argument("--tables", action="store_true")
    p.add_argument("--ranks", action="store_true")
    p.add_argument("--spectra", action="store_true")
    p.add_argument("--verdicts", action="store_true")
    p.add_argument("--jmax", type=int)
    return parser


def make_config(argv) -> RunConfig:
    args = build_parser().parse_args(argv)
    if args.size_bound <= 0:
        raise UsageError("--size-bound must be positive")
    if getattr(args, "jmax", None) is not None and args.jmax <= 0:
        raise UsageError("--jmax must be positive")
    ells = None
    if getattr(args, "ell", None) is not None:
        if args.ell < 2:
            raise UsageError("--ell must be at least 2")
        ells = (args.ell,)
    elif getattr(args, "ell_range", None):
        ells = parse_range(args.ell_range)
    algebra = getattr(args, "algebra", None)
    sections = ()
    if args.command == "report":
        sections = tuple(s for s in ("tables", "ranks", "spectra", "verdicts") if getattr(args, s))
        sections = sections or ("tables", "ranks", "spectra", "verdicts")
    cfg = RunConfig(
        command=args.command,
        algebras=(algebra,) if algebra else TYPES,
        ells=ells,
        object=getattr(args, "object", None),
        target=getattr(args, "target", None),
        fmt=args.format,
        cache_dir=args.cache_dir,
        size_bound=args.size_bound,
        jmax=getattr(args, "jmax", None),
        sections=sections,
    )
    needs_algebra = {"alcove", "fpdim", "spectrum", "decide"}
    if cfg.command in needs_algebra and not algebra:
        raise UsageError(f"{cfg.command} needs --algebra")
    if cfg.command in needs_algebra and ells is None:
        raise UsageError(f"{cfg.command} needs --ell or --ell-range")
    return cfg


def _specs(cfg: RunConfig):
    """Categories for the requested levels; empty alcoves are skipped in ranges."""
    out = []
    for ell in cfg.ells:
        try:
            out.append(CategorySpec(cfg.algebras[0], ell))
        except AlcoveError:
            if len(cfg.ells) == 1:
                raise
    return out


def _weight(spec: CategorySpec, text: str):
    try:
        return parse_weight(spec.algebra, text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- rendering -----------------------------------------------------------------


def render_table(headers, rows) -> str:
    cells = [[str(h) for h in headers]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _approx(x) -> str:
    z = x.to_complex()
    return f"{z.real:.6f}"


# -- commands ------------------------------------------------------------------


def cmd_alcove(cfg: RunConfig):
    docs, blocks = [], []
    for spec in _specs(cfg):
        doc = category.to_json(spec)
        doc["label_names"] = [format_weight(spec.algebra, tuple(w)) for w in doc["labels"]]
        docs.append(doc)
        dims = category.fpdims(spec)
        rows = [(format_weight(spec.algebra, w), ",".join(map(str, w)), _approx(d)) for w, d in dims.items()]
        head = f"{spec.algebra} ell={spec.ell} rank={doc['rank']} weakly_integral={doc['weakly_integral']} pointed={doc['pointed']}"
        blocks.append(head + "\n" + render_table(("label", "coords", "FPdim"), rows))
    return {"command": "alcove", "categories": docs}, "\n\n".join(blocks)


def cmd_fpdim(cfg: RunConfig):
    docs, rows = [], []
    for spec in _specs(cfg):
        w = _weight(spec, cfg.object)
        value = category.fpdim(spec, w)
        num, den = category.fpdim_factors(spec, w)
        docs.append({
            "algebra": spec.algebra,
            "ell": spec.ell,
            "object": list(w),
            "label": format_weight(spec.algebra, w),
            "factors": {"numerator": list(num), "denominator": list(den)},
            "fpdim": value.reduced().to_json(),
            "approx": round(value.to_complex().real, 12),
        })
        rows.append((spec.algebra, spec.ell, format_weight(spec.algebra, w),
                     classify.format_quotient(num, den), _approx(value)))
    table = render_table(("algebra", "ell", "object", "formula", "FPdim"), rows)
    return {"command": "fpdim", "results": docs}, table


def cmd_classify(cfg: RunConfig):
    rows = []
    for t in cfg.algebras:
        for ell, r, pointed in classify.classify_weakly_integral(t):
            if cfg.ells is None or ell in cfg.ells:
                rows.append({"algebra": t, "ell": ell, "rank": r, "pointed": pointed})
    table = render_table(
        ("algebra", "ell", "rank", "pointed"),
        [(d["algebra"], d["ell"], d["rank"], "yes" if d["pointed"] else "no") for d in rows],
    )
    return {"command": "classify", "algebras": list(cfg.algebras), "rows": rows}, table


def _spectrum_doc(spec: CategorySpec, cfg: RunConfig) -> dict:
    if cfg.object is None and spec.algebra.startswith("E"):
        v, target = braid.en_labels(spec)
        s = braid.en_series_derived(spec)
        source = "e-series"
    else:
        v = _weight(spec, cfg.object or "l1")
        target = _weight(spec, cfg.target) if cfg.target else None
        s = braid.hom_spectrum(spec, v, target) if target is not None else braid.sigma_spectrum(spec, v)
        source = "hom" if target is not None else "square"
    ratios = braid.normalize_ratios(s)
    return {
        "algebra": spec.algebra,
        "ell": spec.ell,
        "object": list(v),
        "label": format_weight(spec.algebra, v),
        "target": list(target) if target is not None else None,
        "source": source,
        "spectrum": s.to_json(),
        "ratios": ratios.to_json(),
        "distinct": s.is_distinct(),
        "square_consistent": braid.square_consistent(s, spec),
    }


def cmd_spectrum(cfg: RunConfig):
    docs = [_spectrum_doc(spec, cfg) for spec in _specs(cfg)]
    rows = [(d["algebra"], d["ell"], d["label"], len(d["spectrum"]["display"]),
             "{" + ", ".join(d["ratios"]["display"]) + "}", d["distinct"]) for d in docs]
    table = render_table(("algebra", "ell", "object", "d", "ratios", "distinct"), rows)
    return {"command": "spectrum", "results": docs}, table


def _verdict_row(rep: finiteness.CaseReport):
    return (rep.algebra, rep.ell, rep.rank, rep.status, rep.object_label or "-", rep.d or "-",
            rep.po or "-", rep.outcome or "-", " ".join(rep.verdict.certificate) if rep.verdict else "",
            rep.verdict.reason or "" if rep.verdict else "")


_VERDICT_HEADERS = ("algebra", "ell", "rank", "status", "object", "d", "po", "verdict", "certificate", "reason")


def cmd_decide(cfg: RunConfig):
    reports = []
    for spec in _specs(cfg):
        if cfg.object is not None:
            reports.append(finiteness.analyze_object(spec, _weight(spec, cfg.object), cfg.jmax))
        else:
            reports.append(finiteness.analyze(spec, cfg.jmax))
    table = render_table(_VERDICT_HEADERS, [_verdict_row(r) for r in reports])
    return {"command": "decide", "cases": [r.to_json() for r in reports]}, table


def cmd_verify_matrix(cfg: RunConfig):
    docs = []
    for ell in cfg.ells or tuple(range(18, 37)):
        A, B = matrixrep.build_AB(ell)
        At, Bt = matrixrep.build_AB(ell, alternate_sign=True)
        cert = matrixrep.escalate(ell, cfg.jmax)
        doc = cert.to_json()
        doc["alternate_sign_braid_relation"] = matrixrep.braid_relation_holds(At, Bt)
        docs.append(doc)
    rows = [(d["ell"], d["conductor"], d["braid_relation"], d["alternate_sign_braid_relation"], d["jmax"], d["result"])
            for d in docs]
    table = render_table(("ell", "conductor", "ABA=BAB", "alternate sign ABA=BAB", "jmax", "result"), rows)
    return {"command": "verify-matrix", "results": docs}, table


# -- regression report -----------------------------------------------------------


def _report_tables(mismatches: list) -> tuple[dict, str]:
    table1 = []
    for t in TYPES:
        for ell, r, pointed in classify.classify_weakly_integral(t):
            table1.append([t, ell, r, pointed])
    want1 = sorted([list(x) for x in expected.WEAKLY_INTEGRAL])
    if sorted(table1) != want1:
        mismatches.append({"item": "weakly integral classification", "expected": want1, "got": sorted(table1)})

    table2 = []
    for (t, case, (nu, mu), formula, max_ell), row in zip(expected.NONINTEGRAL_WITNESSES, classify.WITNESS_ROWS):
        b = classify.totient_bound(row.algebra, row.divisible)
        got = {
            "algebra": row.algebra,
            "case": row.case,
            "nu": row.nu,
            "mu": row.mu,
            "fpdim": classify.format_quotient(b.numerator, b.denominator),
            "degree": b.degree,
            "max_ell": b.max_ell,
            "relation": b.relation_string(),
        }
        table2.append(got)
        for key, want in (("algebra", t), ("case", case), ("nu", nu), ("mu", mu), ("fpdim", formula), ("max_ell", max_ell)):
            if got[key] != want:
                mismatches.append({"item": f"witness row {t} {case} {key}", "expected": want, "got": got[key]})
    g2 = next(r for r in table2 if r["algebra"] == "G2" and r["case"] == "3|l")
    if g2["relation"] != expected.G2_RELATION:
        mismatches.append({"item": "G2 relation", "expected": expected.G2_RELATION, "got": g2["relation"]})

    text = "Weakly integral categories\n" + render_table(
        ("algebra", "ell", "rank", "pointed"), [(a, b, c, "yes" if d else "no") for a, b, c, d in sorted(table1)]
    )
    text += "\n\nNon-integral witnesses\n" + render_table(
        ("algebra", "case", "nu", "mu", "FPdim(V_nu)", "degree", "max ell"),
        [(r["algebra"], r["case"], r["nu"], r["mu"], r["fpdim"], r["degree"], r["max_ell"]) for r in table2],
    )
    return {"weakly_integral": [dict(zip(("algebra", "ell", "rank", "pointed"), r)) for r in sorted(table1)],
            "witnesses": table2}, text


def _report_ranks(mismatches: list) -> tuple[dict, str]:
    rows = []
    for (t, ell), want in sorted(expected.RANKS.items()):
        got = category.rank(CategorySpec(t, ell))
        rows.append({"algebra": t, "ell": ell, "rank": got})
        if got != want:
            mismatches.append({"item": f"rank {t} {ell}", "expected": want, "got": got})
    spec = CategorySpec("F4", 24)
    got_labels = sorted(format_weight("F4", w) for w in category.alcove(spec))
    want_labels = sorted(format_weight("F4", parse_weight("F4", x)) for x in expected.F4_24_LABELS)
    if got_labels != want_labels:
        mismatches.append({"item": "F4 ell=24 labels", "expected": want_labels, "got": got_labels})
    text = "Ranks\n" + render_table(("algebra", "ell", "rank"), [(r["algebra"], r["ell"], r["rank"]) for r in rows])
    return {"ranks": rows, "f4_24_labels": got_labels}, text


def _report_spectra(mismatches: list) -> tuple[dict, str]:
    cases = [("G2", 18, "l1", "G2-l1"), ("G2", 30, "l1", "G2-l1"), ("F4", 22, "l1", "F4-l1-even"),
             ("F4", 26, "l1", "F4-l1-even"), ("F4", 24, "l4", "F4-l4-24")]
    cases += [(f"E{n}", ell, None, f"E{n}") for n, ell in ((6, 14), (7, 21), (8, 34))]
    rows = []
    for t, ell, obj, name in cases:
        spec = CategorySpec(t, ell)
        if obj is None:
            s = braid.en_series_derived(spec)
        else:
            s = braid.sigma_spectrum(spec, named_weight(t, obj))
        ok = braid.same_up_to_scale(s, braid.reference_spectrum(name, ell))
        rows.append({"algebra": t, "ell": ell, "reference": name, "matches": ok,
                     "ratios": braid.normalize_ratios(s).describe()})
        if not ok:
            mismatches.append({"item": f"spectrum {name} at ell={ell}", "expected": True, "got": False})
    collide = braid.sigma_spectrum(CategorySpec("F4", 24), named_weight("F4", "l1")).is_distinct()
    if collide:
        mismatches.append({"item": "F4 l1 collision at ell=24", "expected": False, "got": True})
    text = "Spectra (up to global scale)\n" + render_table(
        ("algebra", "ell", "reference", "matches", "ratios"),
        [(r["algebra"], r["ell"], r["reference"], r["matches"], "{" + ", ".join(r["ratios"]) + "}") for r in rows],
    )
    return {"spectra": rows}, text


def _report_verdicts(mismatches: list, jmax) -> tuple[dict, str]:
    integral = {(t, ell) for t, ell, _, _ in expected.WEAKLY_INTEGRAL}
    reports = []
    for t, levels in expected.VERDICT_LEVELS.items():
        for ell in levels:
            try:
                spec = CategorySpec(t, ell)
            except AlcoveError:
                continue
            reports.append(finiteness.analyze(spec, jmax))
    for t, ell in expected.QUOTED_CLAUSES:
        if ell not in expected.VERDICT_LEVELS[t]:
            reports.append(finiteness.analyze(CategorySpec(t, ell), jmax))
    for rep in reports:
        key = (rep.algebra, rep.ell)
        if key in integral:
            if rep.status != "excluded-weakly-integral":
                mismatches.append({"item": f"verdict {key}", "expected": "excluded-weakly-integral", "got": rep.status})
        elif rep.status == "decided" and rep.outcome != finiteness.INFINITE:
            mismatches.append({"item": f"verdict {key}", "expected": finiteness.INFINITE, "got": rep.outcome})
        elif rep.status == "excluded-weakly-integral":
            mismatches.append({"item": f"verdict {key}", "expected": "not weakly integral", "got": rep.status})
        clause = expected.QUOTED_CLAUSES.get(key)
        if clause and (rep.verdict is None or clause not in rep.verdict.certificate):
            got = list(rep.verdict.certificate) if rep.verdict else []
            mismatches.append({"item": f"certificate {key}", "expected": clause, "got": got})
    text = "Verdicts\n" + render_table(_VERDICT_HEADERS, [_verdict_row(r) for r in reports])
    summary = [
        {"algebra": r.algebra, "ell": r.ell, "status": r.status, "verdict": r.outcome,
         "certificate": list(r.verdict.certificate) if r.verdict else []}
        for r in reports
    ]
    return {"verdicts": summary}, text


def cmd_report(cfg: RunConfig):
    mismatches: list = []
    doc: dict = {"command": "report", "sections": list(cfg.sections)}
    texts = []
    steps = {
        "tables": lambda: _report_tables(mismatches),
        "ranks": lambda: _report_ranks(mismatches),
        "spectra": lambda: _report_spectra(mismatches),
        "verdicts": lambda: _report_verdicts(mismatches, cfg.jmax),
    }
    for name in cfg.sections:
        part, text = steps[name]()
        doc.update(part)
        texts.append(text)
    doc["mismatches"] = mismatches
    doc["ok"] = not mismatches
    texts.append("regression: " + ("ok" if not mismatches else f"{len(mismatches)} mismatches"))
    for m in mismatches:
        texts.append(f"  MISMATCH {m['item']}: expected {m['expected']!r}, got {m['got']!r}")
    return doc, "\n\n".join(texts)


COMMANDS = {
    "alcove": cmd_alcove,
    "fpdim": cmd_fpdim,
    "classify": cmd_classify,
    "spectrum": cmd_spectrum,
    "decide": cmd_decide,
    "verify-matrix": cmd_verify_matrix,
    "report": cmd_report,
}


def load_schema(name: str) -> dict:
    """JSON schema shipped for a verb's output (or ``"error"``)."""
    text = resources.files("exbraid").joinpath(f"schemas/{name}.json").read_text(encoding="utf-8")
    return json.loads(text)


def _emit(doc: dict, text: str, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    else:
        stream.write(text + "\n")


def _error(kind: str, message: str, code: int, fmt: str) -> int:
    doc = {"error": {"type": kind, "message": message, "exit_code": code}}
    _emit(doc, f"error ({kind}): {message}", fmt, sys.stderr)
    return code


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    fmt = "json" if "json" in argv and "--format" in argv else "table"
    try:
        cfg = make_config(argv)
    except UsageError as exc:
        return _error("usage", str(exc), EXIT_USAGE, fmt)
    try:
        cache.configure(cfg.cache_dir)
        fusion.size_bound = cfg.size_bound
        doc, text = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        return _error("usage", str(exc), EXIT_USAGE, cfg.fmt)
    except (InternalInconsistency, fusion.NegativeMultiplicity) as exc:
        return _error("red-flag", str(exc), EXIT_RED_FLAG, cfg.fmt)
    except cache.CacheError as exc:
        return _error("cache", str(exc), EXIT_COMPUTE, cfg.fmt)
    except (AlcoveError, SizeBoundExceeded, ArithmeticError, ValueError, KeyError) as exc:
        return _error(type(exc).__name__, str(exc), EXIT_COMPUTE, cfg.fmt)
    _emit(doc, text, cfg.fmt, sys.stdout)
    if cfg.command == "report" and not doc["ok"]:
        return EXIT_REGRESSION
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
