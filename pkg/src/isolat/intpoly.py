"""Dense univariate polynomials over the integers."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .arith import factor_integer
from .errors import BadInput, ZeroConstantTerm, ZeroPolynomial


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPoly:
    """Immutable polynomial; ``coeffs[k]`` is the coefficient of X^k.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPoly:
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPoly.const(other)
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("IntPoly", self.coeffs))

    def __lt__(self, other: IntPoly) -> bool:
        # Order by degree first, then by coefficients from the top down.
        return (self.degree, self.coeffs[::-1]) < (other.degree, other.coeffs[::-1])

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def __str__(self) -> str:
        return to_text(self)

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __add__(self, other) -> IntPoly:
        other = _coerce(other)
        n = max(len(self), len(other))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> IntPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> IntPoly:
        return _coerce(other) - self

    def __mul__(self, other) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> IntPoly:
        if k < 0:
            raise BadInput("negative exponent")
        out, base = IntPoly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x):
        return evaluate(self, x)

    def shift(self, k: int) -> IntPoly:
        """Multiply by X^k."""
        return IntPoly((0,) * k + self.coeffs) if self.coeffs else self

    def substitute_power(self, k: int) -> IntPoly:
        """Return p(X^k)."""
        if not self.coeffs:
            return self
        out = [0] * (k * self.degree + 1)
        for i, c in enumerate(self.coeffs):
            out[i * k] = c
        return IntPoly(out)

    def negate_variable(self) -> IntPoly:
        """Return p(-X)."""
        return IntPoly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))


def _coerce(p) -> IntPoly:
    if isinstance(p, IntPoly):
        return p
    if isinstance(p, int):
        return IntPoly.const(p)
    return IntPoly(p)


def evaluate(p: IntPoly, x):
    """Exact Horner evaluation; ``x`` may be an int or a Fraction."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def derivative(p: IntPoly) -> IntPoly:
    return IntPoly(i * c for i, c in enumerate(p.coeffs) if i)


def content(p: IntPoly) -> int:
    g = 0
    for c in p.coeffs:
        g = math.gcd(g, c)
    return g


def primitive_part(p: IntPoly) -> IntPoly:
    """p divided by its content, normalised to a positive leading coefficient."""
    if p.is_zero():
        return p
    g = content(p)
    if p.lead < 0:
        g = -g
    return IntPoly(c // g for c in p.coeffs)


def reciprocal(p: IntPoly) -> IntPoly:
    """X^deg(p) * p(1/X): the coefficient sequence reversed."""
    if not p.coeffs or p.coeffs[0] == 0:
        raise ZeroConstantTerm("reciprocal needs a nonzero constant term")
    return IntPoly(p.coeffs[::-1])


def is_symmetric(p: IntPoly) -> bool:
    return bool(p.coeffs) and p.degree % 2 == 0 and p.coeffs == p.coeffs[::-1]


def prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder of lead(b)^(deg a - deg b + 1) * a by b."""
    if b.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    db, lb, bc = b.degree, b.lead, b.coeffs
    r = list(a.coeffs)
    e = len(r) - db
    while len(r) - 1 >= db:
        t = r[-1]
        base = len(r) - 1 - db
        r = [c * lb for c in r]
        for j in range(db + 1):
            r[base + j] -= t * bc[j]
        e -= 1
        while r and r[-1] == 0:
            r.pop()
    if e > 0:
        r = [c * lb**e for c in r]
    return IntPoly(r)


def divexact(a: IntPoly, b: IntPoly) -> IntPoly:
    """a / b when b divides a in Z[X]; BadInput otherwise."""
    if b.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    r = list(a.coeffs)
    db, lb, bc = b.degree, b.lead, b.coeffs
    if len(r) - 1 < db:
        if r:
            raise BadInput("inexact polynomial division")
        return IntPoly()
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        t, rem = divmod(r[k], lb)
        if rem:
            raise BadInput("inexact polynomial division")
        q[k - db] = t
        if t:
            for j in range(db + 1):
                r[k - db + j] -= t * bc[j]
    if any(r[:db]):
        raise BadInput("inexact polynomial division")
    return IntPoly(q)


def divmod_rational(a: IntPoly, b: IntPoly) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder over Q, as coefficient lists of Fractions."""
    if b.is_zero():
        raise ZeroPolynomial("division by the zero polynomial")
    r = [Fraction(c) for c in a.coeffs]
    db, lb = b.degree, b.lead
    q = [Fraction(0)] * max(len(r) - db, 0)
    for k in range(len(r) - 1, db - 1, -1):
        t = r[k] / lb
        q[k - db] = t
        if t:
            for j in range(db + 1):
                r[k - db + j] -= t * b.coeffs[j]
    r = r[:db]
    while r and r[-1] == 0:
        r.pop()
    return q, r


def gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive gcd over Q with positive leading coefficient."""
    a, b = primitive_part(a), primitive_part(b)
    while not b.is_zero():
        a, b = b, primitive_part(prem(a, b))
    return a


def resultant(p: IntPoly, q: IntPoly) -> int:
    """Res(p, q) by the subresultant remainder sequence."""
    if p.is_zero() or q.is_zero():
        raise ZeroPolynomial("resultant of the zero polynomial")
    a, b = p, q
    s = 1
    if a.degree < b.degree:
        a, b = b, a
        if a.degree % 2 and b.degree % 2:
            s = -s
    if b.degree == 0:
        return s * b.lead ** a.degree
    ca, cb = content(a), content(b)
    a = IntPoly(c // ca for c in a.coeffs)
    b = IntPoly(c // cb for c in b.coeffs)
    t = ca**b.degree * cb**a.degree
    g = h = 1
    while True:
        delta = a.degree - b.degree
        if a.degree % 2 and b.degree % 2:
            s = -s
        r = prem(a, b)
        a = b
        div = g * h**delta
        b = IntPoly(c // div for c in r.coeffs)
        g = a.lead
        h = g**delta // h ** (delta - 1) if delta else h
        if b.is_zero():
            return 0
        if b.degree == 0:
            break
    da = a.degree
    h = b.lead**da // h ** (da - 1)
    return s * t * h


def _mul_binomial(c: list[int], d: int) -> list[int]:
    # c * (X^d - 1)
    out = [0] * (len(c) + d)
    for i, x in enumerate(c):
        out[i + d] += x
        out[i] -= x
    return out


def _div_binomial(c: list[int], d: int) -> list[int]:
    # exact c / (X^d - 1)
    n = len(c) - d
    q = [0] * n
    for i in range(n):
        q[i] = (q[i - d] if i >= d else 0) - c[i]
    return q


@lru_cache(maxsize=512)
def cyclotomic(m: int) -> IntPoly:
    """The m-th cyclotomic polynomial, by Moebius products of X^d - 1."""
    if m < 1:
        raise BadInput("cyclotomic index must be positive")
    primes = list(factor_integer(m).primes)
    rad = math.prod(primes)
    num: list[int] = [1]
    den: list[int] = []
    for mask in range(1 << len(primes)):
        sub = math.prod(q for i, q in enumerate(primes) if mask >> i & 1)
        d = rad // sub
        if bin(mask).count("1") % 2 == 0:
            num = _mul_binomial(num, d)
        else:
            den.append(d)
    for d in den:
        num = _div_binomial(num, d)
    base = IntPoly(num)
    return base.substitute_power(m // rad) if m != rad else base


def is_perfect_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def squarefree_check(p: IntPoly) -> bool:
    if p.is_zero():
        raise ZeroPolynomial("squarefree_check of the zero polynomial")
    return gcd(p, derivative(p)).degree == 0


def to_text(p: IntPoly, var: str = "x") -> str:
    """Human-readable form, highest degree first."""
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}*{mono}"
        parts.append(f"{sign} {body}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]

