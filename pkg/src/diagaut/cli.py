"""Command-line front end: ``diagaut <command> ...``.

Exit codes: 0 success, 1 verification or diff failure, 2 parse or argument
error, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds
from .classify import (
    ClassificationReport,
    DiscrepancyReport,
    TypeRecord,
    classify,
    compare_to_reference,
    family_from_support,
)
from .expr import ParseError, parse_polynomial, print_polynomial
from .poly import Family, Monomial, Parameter
from .reference import RowCheck, load_reference_table, verify_reference_row
from .smooth import SamplingPolicy, SmoothnessVerdict, default_policy, generically_smooth
from .torus import (
    DiagonalAut,
    FiniteAbelianGroup,
    InfiniteStabilizerError,
    InvariantViolation,
    TypeTriple,
    diagonal_stabilizer,
    invariant_class,
    verify_invariance,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- JSON shapes ---------------------------------------------------------------


def _mon(m: Monomial) -> list[int]:
    return [m.i, m.j, m.k]


def _mono_text(m: Monomial) -> str:
    return print_polynomial(Family(m.degree, {m: 1}))


def _support_text(support) -> str:
    support = list(support)
    return print_polynomial(Family.from_support(support[0].degree, support)) if support else "0"


def family_json(f: Family) -> list[dict]:
    out = []
    for mon, c in f:
        coeff = c.name if isinstance(c, Parameter) else str(c)
        out.append({"monomial": _mon(mon), "coefficient": coeff})
    return out


def triple_json(t: TypeTriple) -> dict:
    return {"order": t.m, "weights": list(t.w), "class": t.c}


def group_json(g: FiniteAbelianGroup) -> dict:
    return {
        "order": g.order,
        "invariant_factors": list(g.invariant_factors),
        "generators": [list(a.w) for a in g.generators],
    }


def verdict_json(v: SmoothnessVerdict) -> dict:
    return {
        "status": v.status,
        "prime": v.prime,
        "assignment": dict(sorted(v.assignment.items())),
        "point": list(v.point) if v.point else None,
    }


def record_json(r: TypeRecord) -> dict:
    return {
        "order": r.triple.m,
        "weights": list(r.triple.w),
        "class": r.triple.c,
        "family": family_json(r.family),
        "stabilizer": group_json(r.stabilizer),
        "status": "listed" if r.listed else {"subsumed_by": triple_json(r.subsumed_by)},
        "smooth_witness": {"prime": r.witness.prime, "assignment": dict(sorted(r.witness.assignment.items()))},
        "large": r.large,
    }


def row_check_json(c: RowCheck) -> dict:
    return {
        "label": c.row.label,
        "paper_family": c.row.text,
        "status": "agrees" if c.agrees else ("documented_correction" if c.documented else "disagrees"),
        "offenders": [{"monomial": _mon(m), "weight": w} for m, w in c.invariance.offenders],
        "missing": sorted((_mon(m) for m in c.missing), reverse=True),
        "extra": sorted((_mon(m) for m in c.extra), reverse=True),
        "computed_family": sorted((_mon(m) for m in c.computed), reverse=True),
    }


def discrepancy_json(dr: DiscrepancyReport) -> dict:
    return {
        "matched": [
            {"row": mt.row.label, "type": triple_json(mt.record.triple), "verbatim": mt.check.agrees}
            for mt in dr.matched
        ],
        "invariance_failures": [row_check_json(c) for c in dr.invariance_failures],
        "family_differences": [row_check_json(c) for c in dr.family_differences],
        "absent_from_paper": [record_json(r) for r in dr.absent_from_paper],
        "unmatched_rows": [row_check_json(c) for c in dr.unmatched_rows],
    }


_MONO = {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 3, "maxItems": 3}
_TRIPLE = {
    "type": "object",
    "required": ["order", "weights", "class"],
    "properties": {"order": {"type": "integer", "minimum": 1}, "weights": _MONO, "class": {"type": "integer"}},
}
_GROUP = {
    "type": "object",
    "required": ["order", "invariant_factors", "generators"],
    "properties": {
        "order": {"type": "integer", "minimum": 1},
        "invariant_factors": {"type": "array", "items": {"type": "integer", "minimum": 2}},
        "generators": {"type": "array", "items": _MONO},
    },
}
_FAMILY = {
    "type": "array",
    "items": {
        "type": "object",
        "required": ["monomial", "coefficient"],
        "properties": {"monomial": _MONO, "coefficient": {"type": "string"}},
    },
}
OUTPUT_RECORD_SCHEMA = {
    "type": "object",
    "required": ["order", "weights", "class", "family", "stabilizer", "status", "smooth_witness"],
    "properties": {
        "order": {"type": "integer", "minimum": 2},
        "weights": _MONO,
        "class": {"type": "integer", "minimum": 0},
        "family": _FAMILY,
        "stabilizer": _GROUP,
        "status": {
            "oneOf": [
                {"const": "listed"},
                {"type": "object", "required": ["subsumed_by"], "properties": {"subsumed_by": _TRIPLE}},
            ]
        },
        "smooth_witness": {
            "type": "object",
            "required": ["prime", "assignment"],
            "properties": {
                "prime": {"type": "integer", "minimum": 2},
                "assignment": {"type": "object", "additionalProperties": {"type": "integer"}},
            },
        },
        "large": {"type": "boolean"},
    },
}
_VERDICT = {
    "type": "object",
    "required": ["status", "prime", "assignment", "point"],
    "properties": {"status": {"enum": ["smooth", "singular", "inconclusive"]}},
}
SCHEMAS = {
    "classify": {
        "type": "object",
        "required": ["degree", "genus", "max_order", "records", "skipped", "inconclusive"],
        "properties": {"records": {"type": "array", "items": OUTPUT_RECORD_SCHEMA}},
    },
    "invariants": {
        "type": "object",
        "required": ["order", "weights", "class", "degree", "family", "expression"],
        "properties": {"family": _FAMILY, "weights": _MONO},
    },
    "stabilizer": _GROUP,
    "smooth": _VERDICT,
    "verify": {
        "type": "object",
        "required": ["invariant", "class", "offenders"],
        "properties": {"invariant": {"type": "boolean"}},
    },
    "bounds": {
        "type": "object",
        "required": ["genus"] + [name for name, _ in bounds.BOUNDS],
        "additionalProperties": {"type": "integer"},
    },
    "table-check": {
        "type": "object",
        "required": ["ok", "rows"],
        "properties": {"ok": {"type": "boolean"}, "rows": {"type": "array"}},
    },
}


# -- argument helpers ----------------------------------------------------------


def _int_list(text: str, n: int | None = None) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None
    if n is not None and len(vals) != n:
        raise UsageError(f"expected {n} values, got {text!r}")
    return vals


def _aut(args) -> DiagonalAut:
    if args.order < 1:
        raise UsageError("--order must be positive")
    if args.weights3:
        return DiagonalAut(args.order, tuple(_int_list(args.weights3, 3)))
    if args.weights:
        a, b = _int_list(args.weights, 2)
        return DiagonalAut.from_ab(args.order, a, b)
    raise UsageError("one of --weights or --weights3 is required")


def _parse(text: str) -> Family:
    return parse_polynomial(text)


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


# -- commands ------------------------------------------------------------------


def _classify_text(report: ClassificationReport, dr: DiscrepancyReport | None) -> str:
    lines = [
        f"degree {report.degree}, genus {report.genus}, orders searched 2..{report.max_order}",
        f"{'Type: m, (a,b) c':<22}| F(X;Y;Z)",
        "-" * 72,
    ]
    for r in report.records:
        t = r.triple
        status = "" if r.listed else f"   [subsumed by {r.subsumed_by}]"
        lines.append(f"{t.m:>3}, ({t.w[1]},{t.w[2]}) c={t.c:<8}| {print_polynomial(r.family)}{status}")
        lines.append(f"{'':<22}|   stabilizer {r.stabilizer}, smooth over F_{r.witness.prime}")
    if report.skipped:
        parts = ", ".join(f"{k}={v}" for k, v in report.skipped.items())
        lines.append(f"skipped candidates: {parts}")
    for t in report.inconclusive:
        lines.append(f"not certified smooth: {t}")
    if dr is not None:
        lines.append("")
        lines.append("comparison with the published table")
        for mt in dr.matched:
            tag = "verbatim" if mt.check.agrees else "corrected"
            lines.append(f"  {mt.row.label:<10} -> {mt.record.triple}  [{tag}]")
        for c in dr.invariance_failures:
            offs = ", ".join(f"{_mono_text(m)} (weight {w})" for m, w in c.invariance.offenders)
            lines.append(f"  row {c.row.label}: not invariant, class {c.invariance.c}: {offs}")
        for c in dr.family_differences:
            lines.append(f"  row {c.row.label}: computed family {_support_text(c.computed)}")
        for r in dr.absent_from_paper:
            lines.append(
                f"  absent from paper: {r.triple}: {print_polynomial(r.family)}"
                f"  (stabilizer {r.stabilizer}, smooth over F_{r.witness.prime} at {dict(r.witness.assignment)})"
            )
        for c in dr.unmatched_rows:
            lines.append(f"  row {c.row.label}: no computed type")
    return "\n".join(lines)


def cmd_classify(args) -> int:
    if args.degree < 3:
        raise UsageError("--degree must be at least 3")
    if args.compare_paper and args.degree != 6:
        raise UsageError("--compare-paper needs --degree 6")
    report = classify(args.degree, args.max_order, workers=args.workers)
    dr = compare_to_reference(report) if args.compare_paper else None
    payload = {
        "degree": report.degree,
        "genus": report.genus,
        "max_order": report.max_order,
        "records": [record_json(r) for r in report.records],
        "skipped": report.skipped,
        "inconclusive": [triple_json(t) for t in report.inconclusive],
    }
    if dr is not None:
        payload["discrepancies"] = discrepancy_json(dr)
    _emit(args, payload, _classify_text(report, dr))
    return EXIT_OK


def cmd_invariants(args) -> int:
    aut = _aut(args)
    if not 0 <= args.class_ < aut.m:
        raise UsageError(f"--class must lie in [0, {aut.m})")
    if args.degree < 1:
        raise UsageError("--degree must be positive")
    fam = family_from_support(invariant_class(aut, args.class_, args.degree), args.degree)
    payload = {
        "order": aut.m,
        "weights": list(aut.w),
        "class": args.class_,
        "degree": args.degree,
        "family": family_json(fam),
        "expression": print_polynomial(fam),
    }
    _emit(args, payload, print_polynomial(fam))
    return EXIT_OK


def cmd_stabilizer(args) -> int:
    fam = _parse(args.poly)
    try:
        group = diagonal_stabilizer(fam.support)
    except InfiniteStabilizerError as exc:
        print(f"infinite stabilizer: {exc}", file=sys.stderr)
        return EXIT_FAIL
    gens = ", ".join(f"({a.m}; {','.join(map(str, a.w))})" for a in group.generators) or "none"
    _emit(args, group_json(group), f"{group} (order {group.order}); generators {gens}")
    return EXIT_OK


def cmd_smooth(args) -> int:
    fam = _parse(args.poly)
    base = default_policy(fam.degree, seed=args.seed)
    primes = tuple(_int_list(args.primes)) if args.primes else base.primes
    try:
        policy = SamplingPolicy(primes=primes, samples=args.samples, seed=args.seed)
        verdict = generically_smooth(fam, policy)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if verdict.smooth:
        text = f"smooth: witness p={verdict.prime}"
        if verdict.assignment:
            text += " at " + ", ".join(f"{k}={v}" for k, v in sorted(verdict.assignment.items()))
    else:
        text = "inconclusive: no smooth specialization found"
    _emit(args, verdict_json(verdict), text)
    return EXIT_OK if verdict.smooth else EXIT_FAIL


def cmd_verify(args) -> int:
    fam = _parse(args.poly)
    aut = _aut(args)
    rep = verify_invariance(fam, aut)
    payload = {
        "invariant": rep.invariant,
        "class": rep.c,
        "offenders": [{"monomial": _mon(m), "weight": w} for m, w in rep.offenders],
    }
    if rep.invariant:
        text = f"invariant, class {rep.c}"
    else:
        offs = ", ".join(f"{_mono_text(m)} weight {w}" for m, w in rep.offenders)
        text = f"not invariant (reference class {rep.c}); offenders: {offs}"
    _emit(args, payload, text)
    return EXIT_OK if rep.invariant else EXIT_FAIL


def cmd_bounds(args) -> int:
    if args.genus is not None:
        g = args.genus
    else:
        if args.degree < 1:
            raise UsageError("--degree must be positive")
        g = bounds.plane_genus(args.degree)
    try:
        values = bounds.all_bounds(g)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = "\n".join([f"genus {g}"] + [f"{name}: {v}" for name, v in values.items()])
    _emit(args, {"genus": g, **values}, text)
    return EXIT_OK


def cmd_table_check(args) -> int:
    checks = [verify_reference_row(row) for row in load_reference_table()]
    ok = all(c.agrees or c.documented for c in checks)
    lines = []
    for c in checks:
        if c.agrees:
            lines.append(f"ok         {c.row.label}")
            continue
        tag = "corrected " if c.documented else "MISMATCH  "
        offs = ", ".join(f"{_mono_text(m)} (weight {w})" for m, w in c.invariance.offenders)
        lines.append(f"{tag} {c.row.label}: non-invariant {offs or '-'}; computed family {_support_text(c.computed)}")
    lines.append(f"{sum(c.agrees for c in checks)} of {len(checks)} rows verbatim")
    _emit(args, {"ok": ok, "rows": [row_check_json(c) for c in checks]}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diagaut", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("table", "json"), default="table")

    def weights(p):
        p.add_argument("--order", type=int, required=True)
        p.add_argument("--weights", help="a,b for diag(1, z^a, z^b)")
        p.add_argument("--weights3", help="w1,w2,w3 for diag(z^w1, z^w2, z^w3)")

    p = sub.add_parser("classify", help="sweep all cyclic diagonal types of a degree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--max-order", type=int)
    p.add_argument("--compare-paper", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    fmt(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("invariants", help="monomials of one weight class")
    weights(p)
    p.add_argument("--class", dest="class_", type=int, default=0)
    p.add_argument("--degree", type=int, default=6)
    fmt(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("stabilizer", help="full diagonal stabilizer of a support")
    p.add_argument("poly")
    fmt(p)
    p.set_defaults(func=cmd_stabilizer)

    p = sub.add_parser("smooth", help="certify a smooth member over a prime field")
    p.add_argument("poly")
    p.add_argument("--primes")
    p.add_argument("--samples", type=int, default=40)
    p.add_argument("--seed", type=int, default=0)
    fmt(p)
    p.set_defaults(func=cmd_smooth)

    p = sub.add_parser("verify", help="check invariance of a polynomial")
    p.add_argument("poly")
    weights(p)
    fmt(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="genus and automorphism bounds")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--genus", type=int)
    g.add_argument("--degree", type=int)
    fmt(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("table-check", help="audit the embedded degree-6 table")
    fmt(p)
    p.set_defaults(func=cmd_table_check)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error {exc.diagnostic}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
