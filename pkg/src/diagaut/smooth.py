"""Smoothness of plane curves over prime fields.

Over F_p with p not dividing the degree d, Euler's relation
``d F = X F_X + Y F_Y + Z F_Z`` means a common zero of the three partials is
already a point of the curve, so singular points are exactly the projective
points where the gradient vanishes.

Scanning the F_p-rational points only finds rational singularities; a
reducible curve can meet itself in conjugate points over an extension.  The
certificate therefore uses :func:`is_geometrically_smooth_over_Fp`: three
forms of degree e have no common zero over the algebraic closure exactly
when the ideal they generate contains every monomial of degree 3e-2, which
is a rank condition on a Macaulay matrix.  A specialization that passes has
non-zero discriminant mod p, so the rational curve with the same integer
coefficients is smooth too; that is the certificate issued by
:func:`generically_smooth`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .poly import Family, Monomial, Parameter, Poly, monomials_of_degree, specialize

DEFAULT_PRIMES = (7, 11, 13, 31)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class SamplingPolicy:
    primes: tuple[int, ...] = DEFAULT_PRIMES
    samples: int = 40
    coeff_range: tuple[int, int] = (-5, 5)
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "primes", tuple(self.primes))
        bad = [p for p in self.primes if not is_prime(p)]
        if bad:
            raise ValueError(f"not prime: {bad}")
        if self.samples < 1:
            raise ValueError("need at least one sample per prime")
        if self.coeff_range[0] > self.coeff_range[1]:
            raise ValueError("empty coefficient range")

    def check_degree(self, d: int) -> None:
        bad = [p for p in self.primes if d % p == 0]
        if bad:
            raise ValueError(f"primes {bad} divide the degree {d}")


def default_policy(d: int, seed: int = 0) -> SamplingPolicy:
    """The default primes, with any divisor of ``d`` replaced by the next good prime."""
    primes = [p for p in DEFAULT_PRIMES if d % p]
    q = DEFAULT_PRIMES[-1]
    while len(primes) < len(DEFAULT_PRIMES):
        q += 1
        if is_prime(q) and d % q:
            primes.append(q)
    return SamplingPolicy(primes=tuple(primes), seed=seed)


@dataclass(frozen=True)
class SmoothnessVerdict:
    """``smooth`` carries (prime, assignment); ``singular`` carries a point."""

    status: str
    prime: int | None = None
    assignment: Mapping[str, int] = field(default_factory=dict)
    point: tuple[int, int, int] | None = None

    @property
    def smooth(self) -> bool:
        return self.status == "smooth"


@lru_cache(maxsize=64)
def projective_points(p: int) -> np.ndarray:
    """Normalized representatives (1:y:z), (0:1:z), (0:0:1); shape (p^2+p+1, 3)."""
    y, z = np.meshgrid(np.arange(p), np.arange(p), indexing="ij")
    affine = np.stack([np.ones(p * p, dtype=np.int64), y.ravel(), z.ravel()], axis=1)
    line = np.stack([np.zeros(p, dtype=np.int64), np.ones(p, dtype=np.int64), np.arange(p)], axis=1)
    return np.concatenate([affine, line, np.array([[0, 0, 1]], dtype=np.int64)]).astype(np.int64)


@lru_cache(maxsize=64)
def _power_table(p: int, top: int) -> np.ndarray:
    """``table[v, e, n] = point[n][v] ** e mod p``."""
    pts = projective_points(p)
    table = np.ones((3, top + 1, len(pts)), dtype=np.int64)
    for e in range(1, top + 1):
        table[:, e, :] = table[:, e - 1, :] * pts.T % p
    return table


class _GradientScanner:
    """Precomputed gradient evaluation of a fixed support at every point of P^2(F_p)."""

    def __init__(self, support: Iterable[Monomial], d: int, p: int):
        self.support = sorted(support, reverse=True)
        self.p = p
        pw = _power_table(p, max(d, 1))
        n = len(projective_points(p))
        self.mats = []
        for var in range(3):
            rows = []
            for mon in self.support:
                e = mon[var]
                if e == 0:
                    rows.append(np.zeros(n, dtype=np.int64))
                    continue
                exps = list(mon)
                exps[var] -= 1
                v = e % p * pw[0, exps[0]] % p * pw[1, exps[1]] % p * pw[2, exps[2]] % p
                rows.append(v)
            self.mats.append(np.array(rows, dtype=np.int64).reshape(len(self.support), n))

    def singular_mask(self, coeffs: Mapping[Monomial, int]) -> np.ndarray:
        vec = np.array([coeffs.get(m, 0) % self.p for m in self.support], dtype=np.int64)
        mask = np.ones(self.mats[0].shape[1], dtype=bool)
        for mat in self.mats:
            mask &= (vec @ mat) % self.p == 0
            if not mask.any():
                break
        return mask


def _check_prime(poly: Poly, p: int) -> Poly:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if poly.degree >= 1 and poly.degree % p == 0:
        raise ValueError(f"p={p} divides the degree {poly.degree}; choose another prime")
    if poly.modulus is None:
        return poly.reduce(p)
    if poly.modulus != p:
        raise ValueError(f"polynomial lives over F_{poly.modulus}, not F_{p}")
    return poly


def singular_points_over_Fp(poly: Poly, p: int) -> list[tuple[int, int, int]]:
    """Every point of P^2(F_p) where all three partials of ``poly`` vanish."""
    poly = _check_prime(poly, p)
    scanner = _GradientScanner(poly.support, poly.degree, p)
    mask = scanner.singular_mask(dict(poly.terms))
    return [tuple(int(x) for x in row) for row in projective_points(p)[mask]]


def is_smooth_over_Fp(poly: Poly, p: int) -> bool:
    return not singular_points_over_Fp(poly, p)


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    """Rank of an integer matrix over F_p by Gaussian elimination."""
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, col])[0]
        if not len(nz):
            continue
        piv = rank + nz[0]
        a[[rank, piv]] = a[[piv, rank]]
        a[rank] = a[rank] * pow(int(a[rank, col]), -1, p) % p
        others = np.nonzero(a[:, col])[0]
        others = others[others != rank]
        if len(others):
            a[others] = (a[others] - np.outer(a[others, col], a[rank])) % p
        rank += 1
    return rank


def _partials_terms(coeffs: Mapping[Monomial, int], p: int) -> list[dict[Monomial, int]]:
    out = []
    for var in range(3):
        terms: dict[Monomial, int] = {}
        for mon, c in coeffs.items():
            e = mon[var]
            if e and (c * e) % p:
                exps = list(mon)
                exps[var] -= 1
                terms[Monomial(*exps)] = c * e % p
        out.append(terms)
    return out


def _no_common_zero(forms: list[dict[Monomial, int]], e: int, p: int) -> bool:
    """True iff the degree-``e`` forms have no common zero in P^2 over the closure of F_p."""
    if e == 0:
        return any(forms)
    target = 3 * e - 2
    cols = {m: n for n, m in enumerate(monomials_of_degree(target))}
    shifts = monomials_of_degree(target - e)
    rows = []
    for form in forms:
        if not form:
            continue
        for sh in shifts:
            row = np.zeros(len(cols), dtype=np.int64)
            for mon, c in form.items():
                row[cols[(mon[0] + sh[0], mon[1] + sh[1], mon[2] + sh[2])]] = c
            rows.append(row)
    if len(rows) < len(cols):
        return False
    return rank_mod_p(np.array(rows), p) == len(cols)


def is_geometrically_smooth_over_Fp(poly: Poly, p: int) -> bool:
    """No singular point over any extension of F_p (exact, via a Macaulay matrix)."""
    poly = _check_prime(poly, p)
    if poly.is_zero():
        return False
    coeffs = {m: int(c) for m, c in poly.terms.items()}
    return _no_common_zero(_partials_terms(coeffs, p), poly.degree - 1, p)


def smoothness_over_Fp(poly: Poly, p: int) -> SmoothnessVerdict:
    pts = singular_points_over_Fp(poly, p)
    if pts:
        return SmoothnessVerdict("singular", prime=p, point=pts[0])
    return SmoothnessVerdict("smooth", prime=p)


def structural_obstruction(support: Iterable[Monomial], d: int) -> str | None:
    """Reason every curve with this support is singular, or ``None``.

    Two exact tests: a coordinate vertex missing all of ``B^d`` and
    ``B^(d-1) C`` is singular on every member, and a support divisible by one
    variable makes that line a component meeting the rest of the curve.
    """
    mons = list(support)
    if not mons:
        return "empty support"
    names = "XYZ"
    for v in range(3):
        if not any(m[v] >= d - 1 for m in mons):
            vertex = ["0", "0", "0"]
            vertex[v] = "1"
            return f"vertex ({':'.join(vertex)}) is singular on every member"
    if d >= 2:
        for v in range(3):
            if all(m[v] > 0 for m in mons):
                return f"the line {names[v]}=0 is a component"
    return None


def generically_smooth(f: Family, policy: SamplingPolicy | None = None) -> SmoothnessVerdict:
    """Look for one smooth specialization of ``f`` over a policy prime.

    A sample must pass the rational point scan (cheap rejection) and then the
    exact test over the algebraic closure.  Parameters are drawn from ``policy.coeff_range`` with a single seeded
    stream; primes are tried in order and the first smooth sample wins.
    Gives ``inconclusive`` once the budget is spent.
    """
    policy = policy or default_policy(f.degree)
    policy.check_degree(f.degree)
    rng = random.Random(policy.seed)
    params = [p.name for p in f.parameters]
    lo, hi = policy.coeff_range
    fixed = {m: c for m, c in f if not isinstance(c, Parameter)}
    for p in policy.primes:
        if any(c.denominator % p == 0 or c.numerator % p == 0 for c in fixed.values()):
            continue
        scanner = _GradientScanner(f.support, f.degree, p)
        tries = policy.samples if params else 1
        for _ in range(tries):
            assignment = {name: rng.randint(lo, hi) for name in params}
            coeffs = specialize(f, assignment, modulus=p).terms
            if scanner.singular_mask(coeffs).any():
                continue
            if _no_common_zero(_partials_terms(coeffs, p), f.degree - 1, p):
                return SmoothnessVerdict("smooth", prime=p, assignment=assignment)
    return SmoothnessVerdict("inconclusive")


def recheck(verdict: SmoothnessVerdict, f: Family) -> bool:
    """Independently re-verify a verdict's witness against ``f``."""
    if verdict.status == "smooth":
        poly = specialize(f, verdict.assignment, modulus=verdict.prime)
        return is_geometrically_smooth_over_Fp(poly, verdict.prime)
    if verdict.status == "singular":
        from .poly import evaluate, gradient

        poly = specialize(f, verdict.assignment, modulus=verdict.prime)
        return all(int(evaluate(g, verdict.point)) == 0 for g in gradient(poly))
    return False
