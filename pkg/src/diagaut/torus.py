"""Diagonal automorphisms of the projective plane and their invariant monomials.

A :class:`DiagonalAut` ``(m; w1, w2, w3)`` stands for
``(X:Y:Z) -> (z^w1 X : z^w2 Y : z^w3 Z)`` with ``z`` a primitive m-th root of
unity.  The monomial ``X^i Y^j Z^k`` is scaled by ``z^(i w1 + j w2 + k w3)``;
a curve is invariant when all its monomials share one weight class, since
the equation only has to be preserved up to a constant.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import gcd, lcm
from typing import Iterable

from .poly import Family, Monomial, Parameter, monomials_of_degree
from .snf import smith_normal_form

PERMUTATIONS: tuple[tuple[int, int, int], ...] = tuple(permutations(range(3)))


class InfiniteStabilizerError(ValueError):
    """The monomial set is preserved by a positive-dimensional torus."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed."""


@dataclass(frozen=True, order=True)
class DiagonalAut:
    m: int
    w: tuple[int, int, int]

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError(f"order modulus must be positive, got {self.m}")
        if len(self.w) != 3:
            raise ValueError("weight vector needs three entries")
        object.__setattr__(self, "w", tuple(int(x) % self.m for x in self.w))

    @classmethod
    def from_ab(cls, m: int, a: int, b: int) -> "DiagonalAut":
        """The table's ``m, (a, b)``: ``diag(1, z^a, z^b)``."""
        return cls(m, (0, a, b))

    def point(self) -> tuple[Fraction, Fraction]:
        """Image in (Q/Z)^2 after fixing the first weight to zero."""
        w1, w2, w3 = self.w
        return (Fraction((w2 - w1) % self.m, self.m), Fraction((w3 - w1) % self.m, self.m))

    def __str__(self) -> str:
        return f"{self.m};{','.join(map(str, self.w))}"


def aut_from_point(pt: tuple[Fraction, Fraction]) -> DiagonalAut:
    """Inverse of :meth:`DiagonalAut.point` at exact order."""
    m = lcm(pt[0].denominator, pt[1].denominator)
    return DiagonalAut(m, (0, int(pt[0] * m), int(pt[1] * m)))


def weight_of(mon: Monomial, aut: DiagonalAut) -> int:
    return (mon[0] * aut.w[0] + mon[1] * aut.w[1] + mon[2] * aut.w[2]) % aut.m


def projective_order(aut: DiagonalAut) -> int:
    w1, w2, w3 = aut.w
    return aut.m // gcd(aut.m, w2 - w1, w3 - w1)


def invariant_class(aut: DiagonalAut, c: int, d: int) -> frozenset[Monomial]:
    """Degree-``d`` monomials of weight ``c`` (mod m) under ``aut``."""
    if not 0 <= c < aut.m:
        raise ValueError(f"class {c} outside [0, {aut.m})")
    return frozenset(mon for mon in monomials_of_degree(d) if weight_of(mon, aut) == c)


@dataclass(frozen=True, order=True)
class TypeTriple:
    aut: DiagonalAut
    c: int
    d: int

    def __post_init__(self) -> None:
        if not 0 <= self.c < self.aut.m:
            raise ValueError(f"class {self.c} outside [0, {self.aut.m})")

    @classmethod
    def of(cls, m: int, w, c: int, d: int) -> "TypeTriple":
        return cls(DiagonalAut(m, tuple(w)), c % m, d)

    @property
    def m(self) -> int:
        return self.aut.m

    @property
    def w(self) -> tuple[int, int, int]:
        return self.aut.w

    def monomials(self) -> frozenset[Monomial]:
        return invariant_class(self.aut, self.c, self.d)

    def __str__(self) -> str:
        return f"{self.m}, ({self.w[1]},{self.w[2]}) c={self.c}"


def orbit(m: int, w: tuple[int, int, int], c: int, d: int) -> dict[tuple[int, int, int], tuple[int, int, int]]:
    """All ``(w2, w3, c)`` with ``w1 = 0`` equivalent to the given triple.

    Each key maps to the first variable permutation (in a fixed order) that
    reaches it.  The moves are generator change ``w -> k w``, scalar twist
    ``w -> w + (e, e, e)`` and permutation of the weights.
    """
    return dict(_orbit(m, tuple(x % m for x in w), c % m, d))


@lru_cache(maxsize=None)
def _units(m: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, m + 1) if gcd(k, m) == 1)


def _orbit(m, w, c, d):
    out: dict[tuple[int, int, int], tuple[int, int, int]] = {}
    for perm in PERMUTATIONS:
        base = w[perm[0]]
        w2 = (w[perm[1]] - base) % m
        w3 = (w[perm[2]] - base) % m
        cc = (c - d * base) % m
        for k in _units(m):
            out.setdefault((k * w2 % m, k * w3 % m, k * cc % m), perm)
    return out.items()


def canonical_form(t: TypeTriple) -> tuple[TypeTriple, tuple[int, int, int]]:
    """Canonical triple plus the permutation carrying ``t``'s monomials to it."""
    if projective_order(t.aut) < 2:
        raise ValueError(f"type {t} has projective order < 2")
    key, perm = min(_orbit(t.m, t.w, t.c, t.d))
    return TypeTriple.of(t.m, (0, key[0], key[1]), key[2], t.d), perm


def canonical_type(t: TypeTriple) -> TypeTriple:
    return canonical_form(t)[0]


def types_equivalent(t1: TypeTriple, t2: TypeTriple) -> bool:
    if t1.d != t2.d:
        raise ValueError("types of different degree")
    return canonical_type(t1) == canonical_type(t2)


def equivalence_witness(t1: TypeTriple, t2: TypeTriple) -> tuple[int, int, int] | None:
    """Permutation ``p`` with ``{e.permuted(p) : e in class(t1)} == class(t2)``."""
    c1, p1 = canonical_form(t1)
    c2, p2 = canonical_form(t2)
    if c1 != c2:
        return None
    inv2 = [0, 0, 0]
    for s, x in enumerate(p2):
        inv2[x] = s
    return tuple(p1[inv2[r]] for r in range(3))


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Group of diagonal projective transformations, ``Z/d1 x Z/d2``.

    ``generators[i]`` has exact projective order ``invariant_factors[i]``.
    """

    invariant_factors: tuple[int, ...]
    generators: tuple[DiagonalAut, ...]

    @property
    def order(self) -> int:
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def elements(self) -> frozenset[tuple[Fraction, Fraction]]:
        pts = [g.point() for g in self.generators]
        out = set()
        for ks in product(*(range(f) for f in self.invariant_factors)):
            u2 = sum((k * p[0] for k, p in zip(ks, pts)), Fraction(0)) % 1
            u3 = sum((k * p[1] for k, p in zip(ks, pts)), Fraction(0)) % 1
            out.add((u2, u3))
        return frozenset(out)

    def contains(self, aut: DiagonalAut) -> bool:
        return aut.point() in self.elements()

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"Z{f}" for f in self.invariant_factors)


def _check_stabilizes(aut: DiagonalAut, support: Iterable[Monomial]) -> None:
    if len({weight_of(m, aut) for m in support}) > 1:
        raise InvariantViolation(f"generator {aut} does not preserve the family")


def diagonal_stabilizer(support: Iterable[Monomial]) -> FiniteAbelianGroup:
    """All diagonal projective maps sending the span of ``support`` to itself.

    The first weight is gauged to zero, leaving unknowns ``(u2, u3)`` in
    (Q/Z)^2 subject to ``(e - e0) . (0, u2, u3) = 0`` for every exponent
    ``e``.  The Smith form of that difference matrix reads off the group.
    """
    mons = sorted({Monomial(*m) for m in support}, reverse=True)
    if len(mons) < 2:
        raise InfiniteStabilizerError("need at least two monomials")
    base = mons[0]
    rows = [[m.j - base.j, m.k - base.k] for m in mons[1:]]
    _, diag, v = smith_normal_form(rows)
    factors, gens = [], []
    for i in range(2):
        di = diag[i][i] if i < len(diag) else 0
        if di == 0:
            raise InfiniteStabilizerError("exponent differences span a rank < 2 lattice")
        if di > 1:
            gen = DiagonalAut(di, (0, v[0][i], v[1][i]))
            _check_stabilizes(gen, mons)
            factors.append(di)
            gens.append(gen)
    return FiniteAbelianGroup(tuple(factors), tuple(gens))


@dataclass(frozen=True)
class InvarianceReport:
    """Outcome of a weight-constancy check.

    ``c`` is the common class when ``invariant``; otherwise it is the
    reference class (the most common weight among fixed-coefficient terms)
    and ``offenders`` lists every monomial with a different weight.
    """

    invariant: bool
    c: int | None
    offenders: tuple[tuple[Monomial, int], ...] = ()


def verify_invariance(f: Family, aut: DiagonalAut, c: int | None = None) -> InvarianceReport:
    weights = [(mon, weight_of(mon, aut), isinstance(coeff, Parameter)) for mon, coeff in f]
    if not weights:
        return InvarianceReport(True, c)
    if c is None:
        fixed = [w for _, w, is_param in weights if not is_param] or [w for _, w, _ in weights]
        counts = Counter(fixed)
        top = max(counts.values())
        c = next(w for w in fixed if counts[w] == top)
    offenders = tuple((mon, w) for mon, w, _ in weights if w != c)
    return InvarianceReport(not offenders, c, offenders)
