"""Parsing and printing of curve equations.

Accepted notation (ASCII)::

    poly     := ["-"] term (("+"|"-") term)*
    term     := coef ("*"? monomial)? | monomial
    monomial := factor ("*"? factor)*
    factor   := ("X"|"Y"|"Z") ("^" nat)?
    coef     := rational | ident
    rational := ["-"] nat ("/" nat)?
    ident    := letter (letter|digit|"_")*, never containing X, Y or Z

so ``X^6+Y^5Z+alpha Y^3Z^3`` and ``X^6 + Y^5*Z + alpha*Y^3*Z^3`` are the
same family.  Identifiers stop at an upper-case X, Y or Z, which always
starts a variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .poly import VARIABLES, Family, Monomial, Parameter

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


@dataclass(frozen=True)
class ParseDiagnostic:
    offset: int
    expected: str
    found: str

    def __str__(self) -> str:
        return f"at offset {self.offset}: expected {self.expected}, found {self.found!r}"


class ParseError(ValueError):
    def __init__(self, diagnostic: ParseDiagnostic):
        super().__init__(str(diagnostic))
        self.diagnostic = diagnostic


@dataclass(frozen=True)
class _Token:
    kind: str  # VAR, IDENT, NAT, OP, EOF
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, n = 0, len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
        elif ch in "XYZ":
            tokens.append(_Token("VAR", ch, pos))
            pos += 1
        elif ch.isascii() and ch.isalpha():
            end = pos + 1
            while end < n and (text[end].isascii() and (text[end].isalnum() or text[end] == "_")) and text[end] not in "XYZ":
                end += 1
            tokens.append(_Token("IDENT", text[pos:end], pos))
            pos = end
        elif ch.isascii() and ch.isdigit():
            end = pos + 1
            while end < n and text[end].isascii() and text[end].isdigit():
                end += 1
            tokens.append(_Token("NAT", text[pos:end], pos))
            pos = end
        elif ch in "+-*/^":
            tokens.append(_Token("OP", ch, pos))
            pos += 1
        else:
            raise ParseError(ParseDiagnostic(_byte_offset(text, pos), "a term, operator or whitespace", ch))
    tokens.append(_Token("EOF", "", n))
    return tokens


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.at = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.at]

    def fail(self, expected: str, tok: _Token | None = None):
        tok = tok or self.tok
        found = tok.text if tok.kind != "EOF" else "end of input"
        raise ParseError(ParseDiagnostic(_byte_offset(self.text, tok.pos), expected, found))

    def is_op(self, ch: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text == ch

    def advance(self) -> _Token:
        tok = self.tok
        self.at += 1
        return tok

    def nat(self) -> int:
        if self.tok.kind != "NAT":
            self.fail("a natural number")
        return int(self.advance().text)

    def monomial(self) -> Monomial:
        exps = [0, 0, 0]
        while True:
            var = self.advance()
            power = 1
            if self.is_op("^"):
                self.advance()
                power = self.nat()
            exps[VARIABLES.index(var.text)] += power
            if self.tok.kind == "VAR":
                continue
            if self.is_op("*") and self.tokens[self.at + 1].kind == "VAR":
                self.advance()
                continue
            return Monomial(*exps)

    def term(self, sign: int):
        """Returns (monomial, coefficient, start token)."""
        start = self.tok
        if self.is_op("-"):
            self.advance()
            sign = -sign
        coeff: Fraction | Parameter
        if self.tok.kind == "NAT":
            num = self.nat()
            den = 1
            if self.is_op("/"):
                self.advance()
                den = self.nat()
                if den == 0:
                    self.fail("a non-zero denominator", self.tokens[self.at - 1])
            coeff = Fraction(num, den) * sign
        elif self.tok.kind == "IDENT":
            ident = self.advance()
            if sign < 0:
                self.fail("an unsigned term (parameters cannot be negated)", start)
            coeff = Parameter(ident.text)
        elif self.tok.kind == "VAR":
            return self.monomial(), Fraction(sign), start
        else:
            self.fail("a coefficient or monomial")
        if self.is_op("*"):
            self.advance()
            if self.tok.kind != "VAR":
                self.fail("a variable X, Y or Z")
            return self.monomial(), coeff, start
        if self.tok.kind == "VAR":
            return self.monomial(), coeff, start
        return Monomial(0, 0, 0), coeff, start

    def parse(self, degree: int | None) -> Family:
        if self.tok.kind == "EOF":
            self.fail("a polynomial")
        terms: dict[Monomial, Fraction | Parameter] = {}
        sign = 1
        while True:
            mon, coeff, start = self.term(sign)
            if degree is None and not (isinstance(coeff, Fraction) and coeff == 0 and mon.degree == 0):
                degree = mon.degree
            if mon.degree != degree and not (isinstance(coeff, Fraction) and coeff == 0):
                self.fail(f"a term of degree {degree} (input must be homogeneous)", start)
            if mon in terms:
                old = terms[mon]
                if isinstance(old, Parameter) or isinstance(coeff, Parameter):
                    self.fail(f"no second coefficient for monomial {_monomial_text(mon) or '1'}", start)
                coeff = old + coeff
            terms[mon] = coeff
            if self.is_op("+"):
                self.advance()
                sign = 1
            elif self.is_op("-"):
                self.advance()
                sign = -1
            elif self.tok.kind == "EOF":
                break
            else:
                self.fail("'+', '-' or end of input")
        degree = 0 if degree is None else degree
        return Family(degree, {m: c for m, c in terms.items() if m.degree == degree})


def parse_polynomial(text: str, degree: int | None = None) -> Family:
    """Parse ``text`` into a :class:`Family`.

    ``degree`` only matters for inputs that are identically zero, whose
    nominal degree cannot be inferred.  Every failure raises
    :class:`ParseError` carrying a single :class:`ParseDiagnostic`.
    """
    fam = _Parser(text).parse(degree)
    if degree is not None and len(fam) and fam.degree != degree:
        raise ParseError(ParseDiagnostic(0, f"a polynomial of degree {degree}", text[:32]))
    return fam


def _monomial_text(mon: Monomial) -> str:
    parts = []
    for var, e in zip(VARIABLES, mon):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}^{e}")
    return "*".join(parts)


def _rational_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def print_polynomial(f: Family) -> str:
    """Render ``f`` with terms ordered by Z degree, then Y degree.

    That puts the pure powers of X and Y first, as in ``X^6 + Y^6 + X*Z^5``.
    """
    out = []
    for idx, (mon, coeff) in enumerate(sorted(f, key=lambda t: (t[0].k, t[0].j))):
        body = _monomial_text(mon)
        negative = isinstance(coeff, Fraction) and coeff < 0
        if isinstance(coeff, Parameter):
            text = f"{coeff.name}*{body}" if body else coeff.name
        else:
            mag = abs(coeff)
            if mag == 1 and body:
                text = body
            else:
                text = f"{_rational_text(mag)}*{body}" if body else _rational_text(mag)
        if idx == 0:
            out.append(f"-{text}" if negative else text)
        else:
            out.append(f" - {text}" if negative else f" + {text}")
    return "".join(out) if out else "0"


def is_valid_parameter_name(name: str) -> bool:
    return bool(_IDENT_RE.fullmatch(name)) and not set(name) & set("XYZ")
