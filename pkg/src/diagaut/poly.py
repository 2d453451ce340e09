"""Exact sparse homogeneous polynomials in X, Y, Z.

Two containers live here:

* :class:`Family` -- a parametric family.  Each monomial carries either an
  exact rational coefficient or a named :class:`Parameter`.
* :class:`Poly` -- a fully numeric polynomial over the rationals
  (``modulus is None``) or over a prime field ``F_p``.

Monomials are plain exponent triples ordered graded-lexicographically with
X > Y > Z, which is also the print order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

VARIABLES = ("X", "Y", "Z")


class Monomial(NamedTuple):
    i: int
    j: int
    k: int

    @property
    def degree(self) -> int:
        return self.i + self.j + self.k

    def permuted(self, perm: tuple[int, int, int]) -> "Monomial":
        """Exponent triple whose slot ``s`` holds ``self[perm[s]]``."""
        return Monomial(self[perm[0]], self[perm[1]], self[perm[2]])


def order_key(mon: Monomial) -> tuple[int, int, int]:
    """Sort key putting monomials in graded-lex order (X > Y > Z)."""
    return (-mon.degree, -mon.i, -mon.j)


def monomials_of_degree(d: int) -> list[Monomial]:
    """All degree-``d`` monomials, graded-lex descending.

    >>> monomials_of_degree(1)
    [Monomial(i=1, j=0, k=0), Monomial(i=0, j=1, k=0), Monomial(i=0, j=0, k=1)]
    """
    if d < 0:
        raise ValueError(f"degree must be non-negative, got {d}")
    return [Monomial(i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


@dataclass(frozen=True)
class Parameter:
    """An opaque named coefficient such as ``alpha``."""

    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Fp:
    """Element of the prime field F_p, value kept in ``[0, p)``."""

    value: int
    p: int

    def __post_init__(self) -> None:
        if self.p < 2:
            raise ValueError(f"bad modulus {self.p}")
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other: Union["Fp", int]) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        return Fp(self.value + self._coerce(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.value - self._coerce(other), self.p)

    def __rsub__(self, other):
        return Fp(self._coerce(other) - self.value, self.p)

    def __mul__(self, other):
        return Fp(self.value * self._coerce(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.value, self.p)

    def __pow__(self, e: int):
        return Fp(pow(self.value, e, self.p), self.p)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __str__(self) -> str:
        return f"{self.value} (mod {self.p})"


Coefficient = Union[Fraction, Parameter]


def _check_degree(mon: Monomial, d: int) -> None:
    if min(mon) < 0:
        raise ValueError(f"negative exponent in {tuple(mon)}")
    if mon.degree != d:
        raise ValueError(f"monomial {tuple(mon)} is not of degree {d}")


class Family:
    """Homogeneous parametric family ``sum coeff * X^i Y^j Z^k``.

    Immutable.  Zero rational coefficients are dropped on construction, so the
    zero family is an empty term map with a nominal degree.
    """

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms: Mapping[Monomial, Coefficient] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        store: dict[Monomial, Coefficient] = {}
        for mon, coeff in items:
            mon = Monomial(*mon)
            _check_degree(mon, degree)
            if mon in store:
                raise ValueError(f"duplicate monomial {tuple(mon)}")
            if isinstance(coeff, str):
                coeff = Parameter(coeff)
            elif not isinstance(coeff, Parameter):
                coeff = Fraction(coeff)
                if coeff == 0:
                    continue
            store[mon] = coeff
        self.degree = degree
        self._terms = dict(sorted(store.items(), key=lambda t: order_key(t[0])))

    @classmethod
    def from_support(cls, degree: int, support: Iterable[Monomial]) -> "Family":
        """Family with coefficient 1 on every monomial of ``support``."""
        return cls(degree, {m: Fraction(1) for m in support})

    @property
    def terms(self) -> Mapping[Monomial, Coefficient]:
        return dict(self._terms)

    @property
    def support(self) -> frozenset[Monomial]:
        return frozenset(self._terms)

    @property
    def parameters(self) -> list[Parameter]:
        """Distinct parameters in order of first appearance."""
        seen: dict[Parameter, None] = {}
        for c in self._terms.values():
            if isinstance(c, Parameter):
                seen.setdefault(c)
        return list(seen)

    def __iter__(self) -> Iterator[tuple[Monomial, Coefficient]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, mon: Monomial) -> Coefficient:
        return self._terms[Monomial(*mon)]

    def __contains__(self, mon) -> bool:
        return Monomial(*mon) in self._terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return self.degree == other.degree and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.degree, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        from .expr import print_polynomial

        return f"Family({print_polynomial(self)!r}, degree={self.degree})"


class Poly:
    """Numeric homogeneous polynomial.

    ``modulus`` is ``None`` for rational coefficients (stored as ``Fraction``)
    or a prime ``p`` (coefficients stored as ints in ``[0, p)``).
    """

    __slots__ = ("degree", "modulus", "_terms")

    def __init__(self, degree: int, terms: Mapping[Monomial, object] | Iterable = (), modulus: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        store: dict[Monomial, object] = {}
        for mon, coeff in items:
            mon = Monomial(*mon)
            _check_degree(mon, degree)
            coeff = self._normalize(coeff, modulus)
            total = store.get(mon, 0) + coeff
            if modulus is not None:
                total %= modulus
            if total:
                store[mon] = total
            else:
                store.pop(mon, None)
        self.degree = degree
        self.modulus = modulus
        self._terms = dict(sorted(store.items(), key=lambda t: order_key(t[0])))

    @staticmethod
    def _normalize(coeff, modulus):
        if isinstance(coeff, Parameter):
            raise TypeError(f"numeric polynomial cannot hold parameter {coeff}")
        if modulus is None:
            if isinstance(coeff, Fp):
                raise TypeError("prime-field coefficient in a rational polynomial")
            return Fraction(coeff)
        if isinstance(coeff, Fp):
            if coeff.p != modulus:
                raise ValueError(f"mixed moduli {coeff.p} and {modulus}")
            return coeff.value
        coeff = Fraction(coeff)
        if coeff.denominator % modulus == 0:
            raise ZeroDivisionError(f"denominator {coeff.denominator} not invertible mod {modulus}")
        return coeff.numerator * pow(coeff.denominator, -1, modulus) % modulus

    @property
    def terms(self) -> Mapping[Monomial, object]:
        return dict(self._terms)

    @property
    def support(self) -> frozenset[Monomial]:
        return frozenset(self._terms)

    def coefficient(self, mon) -> Fraction | Fp:
        c = self._terms.get(Monomial(*mon), 0)
        return Fraction(c) if self.modulus is None else Fp(c, self.modulus)

    def is_zero(self) -> bool:
        return not self._terms

    def reduce(self, p: int) -> "Poly":
        """Image over F_p of a rational polynomial."""
        if self.modulus is not None:
            raise ValueError("polynomial is already over a prime field")
        return Poly(self.degree, self._terms, modulus=p)

    def to_family(self) -> Family:
        if self.modulus is not None:
            raise ValueError("only rational polynomials convert to families")
        return Family(self.degree, self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return (self.degree, self.modulus, self._terms) == (other.degree, other.modulus, other._terms)

    def __hash__(self) -> int:
        return hash((self.degree, self.modulus, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        from .expr import print_polynomial

        body = print_polynomial(Family(self.degree, {m: Fraction(c) for m, c in self._terms.items()}))
        suffix = "" if self.modulus is None else f", mod {self.modulus}"
        return f"Poly({body!r}{suffix})"


def partial_derivative(p: Poly, var: str | int) -> Poly:
    """Formal partial derivative with respect to ``X``, ``Y`` or ``Z``."""
    idx = VARIABLES.index(var) if isinstance(var, str) else var
    if p.degree < 1:
        raise ValueError("derivative of a degree-0 polynomial")
    out = []
    for mon, c in p:
        e = mon[idx]
        if e == 0:
            continue
        new = list(mon)
        new[idx] -= 1
        out.append((Monomial(*new), c * e))
    return Poly(p.degree - 1, out, modulus=p.modulus)


def gradient(p: Poly) -> tuple[Poly, Poly, Poly]:
    return tuple(partial_derivative(p, v) for v in range(3))


def evaluate(p: Poly, point) -> Fp | Fraction:
    """Value of ``p`` at ``point``.

    Over a prime field the point may hold ints or :class:`Fp` elements; every
    :class:`Fp` must share ``p.modulus``.
    """
    if len(point) != 3:
        raise ValueError("point must have three coordinates")
    if p.modulus is None:
        if any(isinstance(x, Fp) for x in point):
            raise ValueError("prime-field point for a rational polynomial")
        x = [Fraction(v) for v in point]
        return sum((c * x[0] ** m.i * x[1] ** m.j * x[2] ** m.k for m, c in p), Fraction(0))
    q = p.modulus
    coords = []
    for v in point:
        if isinstance(v, Fp):
            if v.p != q:
                raise ValueError(f"mixed moduli {v.p} and {q}")
            v = v.value
        coords.append(int(v) % q)
    total = 0
    for m, c in p:
        total += c * pow(coords[0], m.i, q) * pow(coords[1], m.j, q) * pow(coords[2], m.k, q)
    return Fp(total, q)


def specialize(f: Family, assignment: Mapping[str | Parameter, object], modulus: int | None = None) -> Poly:
    """Substitute rational values for every parameter of ``f``.

    With ``modulus`` set the result lives over F_p; a denominator divisible
    by ``p`` raises ``ZeroDivisionError``.
    """
    values = {(k.name if isinstance(k, Parameter) else k): Fraction(v) for k, v in assignment.items()}
    out = []
    for mon, c in f:
        if isinstance(c, Parameter):
            if c.name not in values:
                raise KeyError(f"no value assigned to parameter {c.name!r}")
            c = values[c.name]
        out.append((mon, c))
    return Poly(f.degree, out, modulus=modulus)


def permute_support(support: Iterable[Monomial], perm: tuple[int, int, int]) -> frozenset[Monomial]:
    return frozenset(Monomial(*m).permuted(perm) for m in support)
