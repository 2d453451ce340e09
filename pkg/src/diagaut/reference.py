"""The published degree-6 table, loaded from ``data/sextic_table.txt``."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .expr import parse_polynomial
from .poly import Family, Monomial, monomials_of_degree
from .torus import DiagonalAut, InvarianceReport, TypeTriple, invariant_class, verify_invariance

_BLOCK_RE = re.compile(r"((?:[XYZ](?:\^\d+)?)*)\s*L_\{(\d+),([XYZ])\}")
_FACTOR_RE = re.compile(r"([XYZ])(?:\^(\d+))?")


class ReferenceFormatError(ValueError):
    pass


def _monomial_text(exps) -> str:
    return "*".join(f"{v}^{e}" for v, e in zip("XYZ", exps) if e) or "1"


def expand_blocks(text: str) -> str:
    """Replace each ``[monomial]L_{i,B}`` by a sum with one fresh parameter per monomial.

    ``Z^5L_{1,Z}`` becomes ``l1z_1*X^1*Z^5+l1z_2*Y^1*Z^5``.
    """

    def repl(match: re.Match) -> str:
        prefix = [0, 0, 0]
        for var, e in _FACTOR_RE.findall(match.group(1)):
            prefix["XYZ".index(var)] += int(e or 1)
        deg, banned = int(match.group(2)), "XYZ".index(match.group(3))
        terms = []
        for n, mon in enumerate((m for m in monomials_of_degree(deg) if m[banned] == 0), 1):
            exps = [a + b for a, b in zip(prefix, mon)]
            terms.append(f"l{deg}{match.group(3).lower()}_{n}*{_monomial_text(exps)}")
        return "+".join(terms)

    return _BLOCK_RE.sub(repl, text)


@dataclass(frozen=True)
class ReferenceRow:
    m: int
    a: int
    b: int
    text: str
    family: Family
    line: int

    @property
    def aut(self) -> DiagonalAut:
        return DiagonalAut.from_ab(self.m, self.a, self.b)

    @property
    def triple(self) -> TypeTriple:
        """Type with the class taken from the row's own fixed terms."""
        return TypeTriple(self.aut, verify_invariance(self.family, self.aut).c, self.family.degree)

    @property
    def label(self) -> str:
        return f"{self.m},({self.a},{self.b})"


def parse_rows(text: str) -> list[ReferenceRow]:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(";", 3)
        if len(parts) != 4:
            raise ReferenceFormatError(f"line {lineno}: expected m;a;b;family")
        try:
            m, a, b = (int(x) for x in parts[:3])
            family = parse_polynomial(expand_blocks(parts[3]))
        except ValueError as exc:
            raise ReferenceFormatError(f"line {lineno}: {exc}") from exc
        rows.append(ReferenceRow(m, a, b, parts[3].strip(), family, lineno))
    return rows


@lru_cache(maxsize=1)
def load_reference_table() -> tuple[ReferenceRow, ...]:
    text = resources.files("diagaut").joinpath("data/sextic_table.txt").read_text(encoding="ascii")
    return tuple(parse_rows(text))


@dataclass(frozen=True)
class Correction:
    """A published row that fails invariance, and what the check finds instead."""

    offenders: frozenset[tuple[Monomial, int]]
    family: frozenset[Monomial]


def _mons(*triples) -> frozenset[Monomial]:
    return frozenset(Monomial(*t) for t in triples)


KNOWN_CORRECTIONS: dict[tuple[int, int, int], Correction] = {
    (15, 10, 9): Correction(
        offenders=frozenset({(Monomial(3, 0, 3), 12)}),
        family=_mons((6, 0, 0), (0, 6, 0), (3, 3, 0), (1, 0, 5)),
    ),
    (25, 2, 15): Correction(
        offenders=frozenset({(Monomial(4, 0, 2), 5), (Monomial(3, 0, 3), 20), (Monomial(2, 0, 4), 10)}),
        family=_mons((6, 0, 0), (0, 5, 1), (1, 0, 5)),
    ),
}


@dataclass(frozen=True)
class RowCheck:
    row: ReferenceRow
    invariance: InvarianceReport
    computed: frozenset[Monomial]
    missing: frozenset[Monomial]  # invariant but absent from the row
    extra: frozenset[Monomial]  # printed in the row but not invariant

    @property
    def agrees(self) -> bool:
        return self.invariance.invariant and not self.missing and not self.extra

    @property
    def documented(self) -> bool:
        """Disagreement matches the recorded correction exactly."""
        corr = KNOWN_CORRECTIONS.get((self.row.m, self.row.a, self.row.b))
        return (
            corr is not None
            and frozenset(self.invariance.offenders) == corr.offenders
            and self.computed == corr.family
        )


def verify_reference_row(row: ReferenceRow) -> RowCheck:
    inv = verify_invariance(row.family, row.aut)
    computed = invariant_class(row.aut, inv.c, row.family.degree)
    support = row.family.support
    return RowCheck(row, inv, computed, computed - support, support - computed)
