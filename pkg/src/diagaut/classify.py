"""Sweep of cyclic diagonal types for smooth plane curves of a given degree.

Every diagonal generator ``(0, a, b)`` of exact projective order ``m`` and
every weight class ``c`` is visited once per equivalence orbit.  The class's
monomials form a family; families that cannot contain a smooth curve are
dropped, the rest get a smoothness certificate and their full diagonal
stabilizer.  A type is *listed* when that stabilizer is exactly the cyclic
group it generates, otherwise it is *subsumed* by a larger cyclic type.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, NamedTuple

from .bounds import large_group_threshold, plane_genus, wiman_element_bound
from .poly import Family, Monomial, Parameter, permute_support
from .reference import ReferenceRow, RowCheck, load_reference_table, verify_reference_row
from .smooth import SamplingPolicy, SmoothnessVerdict, default_policy, generically_smooth, structural_obstruction
from .torus import (
    PERMUTATIONS,
    DiagonalAut,
    FiniteAbelianGroup,
    InfiniteStabilizerError,
    InvariantViolation,
    TypeTriple,
    aut_from_point,
    canonical_type,
    diagonal_stabilizer,
    orbit,
    verify_invariance,
    weight_of,
)

log = logging.getLogger(__name__)

PARAMETER_NAMES = ("alpha", "beta", "gamma", "delta", "mu", "eta")


def parameter_name(n: int) -> str:
    return PARAMETER_NAMES[n] if n < len(PARAMETER_NAMES) else f"c{n + 1}"


def anchors(support: Iterable[Monomial], d: int) -> list[Monomial]:
    """One monomial per coordinate vertex, preferring ``B^d`` over ``B^(d-1) C``."""
    mons = set(support)
    chosen: list[Monomial] = []
    for v in range(3):
        for other in (None, *(u for u in range(3) if u != v)):
            exps = [0, 0, 0]
            exps[v] = d if other is None else d - 1
            if other is not None:
                exps[other] = 1
            mon = Monomial(*exps)
            if mon in mons:
                if mon not in chosen:
                    chosen.append(mon)
                break
    return chosen


def family_from_support(support: Iterable[Monomial], d: int) -> Family:
    """Anchors get coefficient 1, remaining monomials named parameters in print order."""
    support = set(support)
    fixed = set(anchors(support, d))
    terms: dict[Monomial, Fraction | Parameter] = {}
    n = 0
    for mon in sorted(support, key=lambda m: (m.k, m.j)):
        if mon in fixed:
            terms[mon] = Fraction(1)
        else:
            terms[mon] = Parameter(parameter_name(n))
            n += 1
    return Family(d, terms)


@dataclass(frozen=True)
class TypeRecord:
    triple: TypeTriple  # canonical
    family: Family
    stabilizer: FiniteAbelianGroup
    subsumed_by: TypeTriple | None
    witness: SmoothnessVerdict
    large: bool = False

    @property
    def listed(self) -> bool:
        return self.subsumed_by is None

    @property
    def sort_key(self):
        return (-self.triple.m, self.triple.w, self.triple.c)


@dataclass(frozen=True)
class ClassificationReport:
    degree: int
    genus: int
    max_order: int
    records: tuple[TypeRecord, ...]
    skipped: dict[str, int] = field(default_factory=dict)
    inconclusive: tuple[TypeTriple, ...] = ()

    @property
    def listed(self) -> list[TypeRecord]:
        return [r for r in self.records if r.listed]

    @property
    def subsumed(self) -> list[TypeRecord]:
        return [r for r in self.records if not r.listed]


def default_max_order(d: int) -> int:
    g = plane_genus(d)
    if g >= 2:
        return wiman_element_bound(g)
    return 2 * d * (d - 1)


def candidate_triples(d: int, max_order: int) -> Iterator[TypeTriple]:
    """Canonical triples of every order in ``[2, max_order]``, each exactly once."""
    for m in range(2, max_order + 1):
        seen: set[tuple[int, int, int]] = set()
        for a in range(m):
            for b in range(m):
                if gcd(m, a, b) != 1:
                    continue
                for c in range(m):
                    if (a, b, c) in seen:
                        continue
                    orb = orbit(m, (0, a, b), c, d)
                    seen.update(orb)
                    w2, w3, cc = min(orb)
                    yield TypeTriple.of(m, (0, w2, w3), cc, d)


def cyclic_overgroup(group: FiniteAbelianGroup, aut: DiagonalAut, support: frozenset[Monomial], d: int) -> TypeTriple:
    """Canonical type of a maximal-order element of ``group`` whose powers include ``aut``."""
    target = aut.point()
    best: list[TypeTriple] = []
    best_order = 0
    for pt in group.elements():
        g = aut_from_point(pt)
        if g.m < best_order:
            continue
        powers = {((k * pt[0]) % 1, (k * pt[1]) % 1) for k in range(g.m)}
        if target not in powers:
            continue
        c = weight_of(next(iter(support)), g)
        t = canonical_type(TypeTriple(g, c, d)) if g.m >= 2 else TypeTriple(g, c, d)
        if g.m > best_order:
            best_order, best = g.m, [t]
        else:
            best.append(t)
    return min(best)


def evaluate_candidate(triple: TypeTriple, policy: SamplingPolicy) -> tuple[str, TypeRecord | TypeTriple | None]:
    """Process one canonical triple.  Pure; returns (outcome, payload)."""
    d = triple.d
    support = triple.monomials()
    reason = structural_obstruction(support, d)
    if reason is not None:
        return "structurally_singular", None
    family = family_from_support(support, d)
    verdict = generically_smooth(family, policy)
    if not verdict.smooth:
        return "inconclusive", triple
    try:
        return "record", build_record(triple, support, family, verdict)
    except InfiniteStabilizerError:
        return "infinite_stabilizer", triple


def build_record(triple: TypeTriple, support: frozenset[Monomial], family: Family, verdict: SmoothnessVerdict) -> TypeRecord:
    """Attach the stabilizer and listed/subsumed status to a certified family."""
    d = triple.d
    group = diagonal_stabilizer(support)
    if not group.contains(triple.aut):
        raise InvariantViolation(f"stabilizer of {triple} misses its own generator")
    subsumer = None if group.order == triple.m else cyclic_overgroup(group, triple.aut, support, d)
    g = plane_genus(d)
    large = g >= 2 and triple.m > large_group_threshold(g)
    return TypeRecord(triple, family, group, subsumer, verdict, large)


def _evaluate_packed(args):
    return evaluate_candidate(*args)


def classify(
    d: int,
    max_order: int | None = None,
    policy: SamplingPolicy | None = None,
    workers: int = 1,
) -> ClassificationReport:
    """Classify cyclic diagonal types of smooth degree-``d`` curves.

    ``max_order`` defaults to the Wiman bound for the plane genus.  With
    ``workers > 1`` candidates are evaluated in a process pool; the result
    does not depend on scheduling.
    """
    if d < 3:
        raise ValueError(f"degree must be at least 3, got {d}")
    max_order = default_max_order(d) if max_order is None else max_order
    policy = policy or default_policy(d)
    policy.check_degree(d)
    cands = list(candidate_triples(d, max_order))
    jobs = [(t, policy) for t in cands]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_evaluate_packed, jobs, chunksize=256))
    else:
        outcomes = [evaluate_candidate(*job) for job in jobs]
    skipped: Counter[str] = Counter()
    records, inconclusive = [], []
    for triple, (kind, payload) in zip(cands, outcomes):
        if kind == "record":
            records.append(payload)
            continue
        skipped[kind] += 1
        if kind == "inconclusive":
            log.info("type %s: no smooth member found, excluded", triple)
            inconclusive.append(triple)
        elif kind == "infinite_stabilizer":
            log.info("type %s: infinite stabilizer, excluded", triple)
    records.sort(key=lambda r: r.sort_key)
    _audit(records)
    return ClassificationReport(
        degree=d,
        genus=plane_genus(d),
        max_order=max_order,
        records=tuple(records),
        skipped=dict(sorted(skipped.items())),
        inconclusive=tuple(sorted(inconclusive)),
    )


def _audit(records: list[TypeRecord]) -> None:
    keys = [r.triple for r in records]
    if len(set(keys)) != len(keys):
        raise InvariantViolation("duplicate canonical types in report")
    for r in records:
        rep = verify_invariance(r.family, r.triple.aut)
        if not rep.invariant or rep.c != r.triple.c:
            raise InvariantViolation(f"family of {r.triple} fails its own invariance")
        if r.listed and r.stabilizer.order != r.triple.m:
            raise InvariantViolation(f"listed type {r.triple} has stabilizer of order {r.stabilizer.order}")
        if not r.listed and r.subsumed_by.m % r.triple.m:
            raise InvariantViolation(f"{r.triple} is not a subgroup of {r.subsumed_by}")


# -- comparison with the published table -------------------------------------


class RowMatch(NamedTuple):
    row: ReferenceRow
    record: TypeRecord
    check: RowCheck


@dataclass(frozen=True)
class DiscrepancyReport:
    matched: tuple[RowMatch, ...]
    invariance_failures: tuple[RowCheck, ...]
    family_differences: tuple[RowCheck, ...]
    absent_from_paper: tuple[TypeRecord, ...]
    unmatched_rows: tuple[RowCheck, ...]

    @property
    def verbatim(self) -> list[RowMatch]:
        return [mt for mt in self.matched if mt.check.agrees]


def compare_to_reference(report: ClassificationReport, rows: Iterable[ReferenceRow] | None = None) -> DiscrepancyReport:
    if report.degree != 6:
        raise ValueError("the reference table is for degree 6")
    rows = load_reference_table() if rows is None else tuple(rows)
    by_type = {r.triple: r for r in report.listed}
    matched, unmatched, used = [], [], set()
    for row in rows:
        check = verify_reference_row(row)
        key = canonical_type(TypeTriple(row.aut, check.invariance.c, 6))
        rec = by_type.get(key)
        if rec is None:
            unmatched.append(check)
        else:
            matched.append(RowMatch(row, rec, check))
            used.add(key)
    checks = [mt.check for mt in matched] + unmatched
    return DiscrepancyReport(
        matched=tuple(matched),
        invariance_failures=tuple(c for c in checks if not c.invariance.invariant),
        family_differences=tuple(c for c in checks if c.missing or c.extra),
        absent_from_paper=tuple(r for r in report.listed if r.triple not in used),
        unmatched_rows=tuple(unmatched),
    )


# -- containment between types -------------------------------------------------


class Edge(NamedTuple):
    """``general``'s group sits inside ``special``'s on some member of ``general``'s family.

    ``kind`` is ``"specialization"`` when ``special``'s family is (up to a
    variable permutation) a sub-support of ``general``'s, and ``"subgroup"``
    when a subsumed record points at its cyclic overgroup.
    """

    general: TypeTriple
    special: TypeTriple
    kind: str


def contains_support(big: frozenset[Monomial], small: frozenset[Monomial]) -> tuple[int, int, int] | None:
    """Permutation ``p`` with ``small.permuted(p) <= big``, if any."""
    for perm in PERMUTATIONS:
        if permute_support(small, perm) <= big:
            return perm
    return None


def subsumption_edges(report: ClassificationReport) -> list[Edge]:
    listed = report.listed
    edges = []
    for rec in report.records:
        sup = rec.family.support
        for other in listed:
            if other.triple == rec.triple:
                continue
            small = other.family.support
            if len(small) < len(sup) and contains_support(sup, small) is not None:
                edges.append(Edge(rec.triple, other.triple, "specialization"))
        if not rec.listed:
            edges.append(Edge(rec.triple, rec.subsumed_by, "subgroup"))
    return edges

