"""Polynomial expression parser.

Grammar (whitespace between tokens is ignored):

    Expr   := Term (('+' | '-') Term)*
    Term   := Factor ('*' Factor)*
    Factor := Atom ('^' UInt)?
    Atom   := Int | 'x' | 'Phi' '(' UInt ')' | '(' Expr ')'

A top-level product whose atoms are all Phi(m) or parenthesised
expressions is read as a factored characteristic polynomial; anything
else is a plain polynomial.  Error offsets are byte offsets into the
UTF-8 encoded input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, ValidationError
from .intpoly import IntPoly, cyclotomic
from .obstruction import Factor, FactoredCharPoly

# Guards against inputs that would take forever to expand.
MAX_DEGREE = 1_000_000
MAX_PHI_INDEX = 10_000_000


@dataclass(frozen=True)
class _Atom:
    poly: IntPoly
    kind: str  # "int", "x", "phi", "group"
    index: int | None = None


class _Parser:
    def __init__(self, text: str):
        self.src = text.encode("utf-8")
        self.pos = 0

    def fail(self, msg: str, at: int | None = None):
        raise ParseError(msg, self.pos if at is None else at)

    def skip(self) -> None:
        while self.pos < len(self.src) and self.src[self.pos] in b" \t\r\n":
            self.pos += 1

    def peek(self) -> int | None:
        self.skip()
        return self.src[self.pos] if self.pos < len(self.src) else None

    def expect(self, ch: bytes) -> None:
        if self.peek() != ch[0]:
            self.fail(f"expected '{ch.decode()}'")
        self.pos += 1

    def uint(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.src) and 48 <= self.src[self.pos] <= 57:
            self.pos += 1
        if start == self.pos:
            self.fail("expected an unsigned integer")
        return int(self.src[start:self.pos])

    def expr(self) -> list[tuple[int, list[tuple[_Atom, int]]]]:
        terms = [(1, self.term())]
        while self.peek() in (ord("+"), ord("-")):
            sign = 1 if self.src[self.pos] == ord("+") else -1
            self.pos += 1
            terms.append((sign, self.term()))
        return terms

    def term(self) -> list[tuple[_Atom, int]]:
        factors = [self.factor()]
        while self.peek() == ord("*"):
            self.pos += 1
            factors.append(self.factor())
        return factors

    def factor(self) -> tuple[_Atom, int]:
        atom = self.atom()
        if self.peek() == ord("^"):
            self.pos += 1
            at = self.pos
            k = self.uint()
            if max(atom.poly.degree, 1) * k > MAX_DEGREE:
                self.fail(f"degree would exceed {MAX_DEGREE}", at)
            return atom, k
        return atom, 1

    def atom(self) -> _Atom:
        c = self.peek()
        if c is None:
            self.fail("unexpected end of input")
        if 48 <= c <= 57:
            return _Atom(IntPoly.const(self.uint()), "int")
        if c == ord("x"):
            self.pos += 1
            return _Atom(IntPoly.x(), "x")
        if self.src.startswith(b"Phi", self.pos):
            self.pos += 3
            self.expect(b"(")
            at = self.pos
            m = self.uint()
            if not 1 <= m <= MAX_PHI_INDEX:
                self.fail(f"Phi index must lie in [1, {MAX_PHI_INDEX}]", at)
            self.expect(b")")
            return _Atom(cyclotomic(m), "phi", m)
        if c == ord("("):
            self.pos += 1
            inner = _evaluate(self.expr())
            self.expect(b")")
            return _Atom(inner, "group")
        self.fail(f"unexpected character {chr(c)!r}")

    def done(self) -> None:
        if self.peek() is not None:
            self.fail("trailing input")


def _evaluate(terms) -> IntPoly:
    out = IntPoly()
    for sign, factors in terms:
        prod = IntPoly.const(sign)
        for atom, k in factors:
            prod = prod * atom.poly**k
        out = out + prod
    return out


def parse_poly_expr(text: str) -> FactoredCharPoly | IntPoly:
    """Parse text into a FactoredCharPoly or an IntPoly (see module doc)."""
    p = _Parser(text)
    terms = p.expr()
    p.done()
    if len(terms) == 1 and all(a.kind in ("phi", "group") for a, _ in terms[0][1]):
        factors = [
            Factor(a.poly, k, a.index) if a.kind == "phi" else Factor(a.poly, k)
            for a, k in terms[0][1]
        ]
        if any(k == 0 for _, k in terms[0][1]):
            raise ValidationError("zero exponent on a factor")
        return FactoredCharPoly(factors)
    return _evaluate(terms)


def parse_char_poly(text: str) -> FactoredCharPoly:
    """Like parse_poly_expr, but a bare polynomial becomes a single factor."""
    out = parse_poly_expr(text)
    if isinstance(out, IntPoly):
        return FactoredCharPoly([(out, 1)])
    return out


def parse_plain(text: str) -> IntPoly:
    """Parse and multiply out, whatever the shape."""
    p = _Parser(text)
    terms = p.expr()
    p.done()
    return _evaluate(terms)
