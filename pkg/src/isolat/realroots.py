"""Exact counting of roots on and off the unit circle.

A symmetric f of degree 2n is x^n g(x + 1/x) for a unique g of degree n.
Unit-circle root pairs of f are the roots of g in (-2, 2); every other
root of g accounts for exactly one root of f outside the unit circle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BoundaryRoot, NotSymmetric
from .intpoly import IntPoly, derivative, divmod_rational, evaluate, gcd, is_symmetric


@dataclass(frozen=True)
class TracePoly:
    g: IntPoly
    source: IntPoly

    def expand(self) -> IntPoly:
        """x^n * g(x + 1/x), rebuilt from scratch."""
        n = self.g.degree
        # (x^2 + 1)^k * x^(n-k) is x^n * (x + 1/x)^k.
        out = IntPoly()
        sq = IntPoly((1, 0, 1))
        for k, c in enumerate(self.g.coeffs):
            if c:
                out = out + (sq**k).shift(n - k) * c
        return out


def trace_polynomial(f: IntPoly) -> TracePoly:
    if not is_symmetric(f) or f.lead <= 0:
        raise NotSymmetric("expected a symmetric polynomial of even degree")
    n = f.degree // 2
    c = f.coeffs
    # T_k(y) = x^k + x^-k: T_0 = 2, T_1 = y, T_{k+1} = y T_k - T_{k-1}.
    y = IntPoly.x()
    t_prev, t_cur = IntPoly.const(2), y
    g = IntPoly.const(c[n])
    for k in range(1, n + 1):
        if k > 1:
            t_prev, t_cur = t_cur, y * t_cur - t_prev
        g = g + t_cur * c[n + k]
    return TracePoly(g=g, source=f)


def _primitive_positive(coeffs: list[Fraction]) -> IntPoly:
    """Clear denominators and divide by the content, keeping the sign."""
    from math import gcd as igcd, lcm

    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = igcd(g, v)
    return IntPoly(v // g for v in ints) if g else IntPoly()


def squarefree_part(g: IntPoly) -> IntPoly:
    d = gcd(g, derivative(g))
    if d.degree <= 0:
        return g
    q, r = divmod_rational(g, d)
    return _primitive_positive(q)


def sturm_chain(g: IntPoly) -> list[IntPoly]:
    """Sturm sequence of g, each term scaled by a positive constant."""
    chain = [g, derivative(g)]
    while chain[-1].degree > 0:
        _, r = divmod_rational(chain[-2], chain[-1])
        if not r:
            break
        chain.append(_primitive_positive([-c for c in r]))
    return chain


def _sign_changes(chain: list[IntPoly], x: Fraction) -> int:
    signs = [s for s in (_sign(evaluate(p, x)) for p in chain) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sturm_count_interval(g: IntPoly, a, b) -> int:
    """Number of distinct real roots of g in (a, b]."""
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise ValueError("need a < b")
    h = squarefree_part(g)
    if h.degree <= 0:
        return 0
    chain = sturm_chain(h)
    return _sign_changes(chain, a) - _sign_changes(chain, b)


def _yun(g: IntPoly) -> list[tuple[IntPoly, int]]:
    """Squarefree decomposition over Q (Yun), primitive parts."""
    out = []
    d = gcd(g, derivative(g))
    w = _primitive_positive(divmod_rational(g, d)[0])
    c = d
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        z = _primitive_positive(divmod_rational(w, y)[0])
        if z.degree > 0:
            out.append((z, i))
        w = y
        c = _primitive_positive(divmod_rational(c, y)[0])
        i += 1
    return out


def m_of_factor(f: IntPoly) -> int:
    """Number of roots of f with |z| > 1, counted with multiplicity."""
    t = trace_polynomial(f)
    g = t.g
    if evaluate(g, 2) == 0 or evaluate(g, -2) == 0:
        raise BoundaryRoot("X - 1 or X + 1 divides the input")
    inside = sum(e * sturm_count_interval(h, -2, 2) for h, e in _yun(g))
    return g.degree - inside


def unit_circle_pairs(f: IntPoly) -> int:
    return f.degree // 2 - m_of_factor(f)


def factor_m(factor) -> int:
    """m of one factor of a FactoredCharPoly, skipping Sturm for Phi_m."""
    if factor.cyclotomic_index is not None:
        return 0
    return m_of_factor(factor.poly)


def factor_pairs(factor) -> int:
    if factor.cyclotomic_index is not None:
        return factor.poly.degree // 2
    return unit_circle_pairs(factor.poly)


def m_of(F) -> int:
    """Sum of n_i * m(f_i) over the factors of F."""
    return sum(fac.mult * factor_m(fac) for fac in F.factors)
