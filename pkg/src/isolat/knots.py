"""Torus-knot Alexander polynomials and the knot indices they admit."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd

from .arith import divisors, is_prime, legendre
from .decision import (
    REALIZABLE,
    UNDETERMINED,
    DecisionReport,
    MilnorProfile,
    SignatureTarget,
    _parity_box,
    engine,
)
from .errors import BadSpec, NotSquareFree, NotUnramified
from .intpoly import IntPoly, evaluate
from .obstruction import Factor, FactoredCharPoly, ShGroup, sh_group
from .intpoly import cyclotomic


@dataclass(frozen=True)
class TorusKnotSpec:
    u: int
    v: int

    def __post_init__(self):
        if self.u < 3 or self.v < 3 or self.u % 2 == 0 or self.v % 2 == 0:
            raise BadSpec(f"u and v must be odd and > 1, got ({self.u}, {self.v})")
        if gcd(self.u, self.v) != 1:
            raise BadSpec(f"u and v must be coprime, got ({self.u}, {self.v})")


def torus_alexander(spec: TorusKnotSpec) -> FactoredCharPoly:
    """Product of Phi_{ab} over a | u, b | v with a, b > 1."""
    idx = sorted(a * b for a in divisors(spec.u) if a > 1 for b in divisors(spec.v) if b > 1)
    return FactoredCharPoly(Factor(cyclotomic(m), 1, m) for m in idx)


def is_unramified(d: IntPoly) -> bool:
    return d.is_monic and evaluate(d, 1) == 1 and abs(evaluate(d, -1)) == 1


def _check_knot_input(F: FactoredCharPoly) -> None:
    if any(f.mult != 1 for f in F.factors):
        raise NotSquareFree("Alexander polynomial must be square-free")
    at1 = at_m1 = 1
    for f in F.factors:
        at1 *= evaluate(f.poly, 1)
        at_m1 *= evaluate(f.poly, -1)
    if at1 != 1 or abs(at_m1) != 1:
        raise NotUnramified("need value 1 at 1 and +-1 at -1")


def knot_milnor_realizable(
    F: FactoredCharPoly, t: SignatureTarget, m: MilnorProfile, extended: bool = False
) -> DecisionReport:
    """Whether a knot with Alexander polynomial F and Milnor data m exists."""
    _check_knot_input(F)
    return engine(F, extended).milnor(t, m)


@dataclass
class KnotIndexReport:
    degree: int
    realizable_indices: list[int]
    witnesses: dict[int, tuple[int, ...]] = field(default_factory=dict)
    refused: dict[int, str] = field(default_factory=dict)

    @property
    def bound(self) -> int:
        return self.degree


def realizable_indices(F: FactoredCharPoly, extended: bool = False) -> KnotIndexReport:
    """Indices r - s of knots with Alexander polynomial F.

    Only the parities of the per-factor negative-pair counts enter the
    obstruction, so each index is searched over 2^|I| parity patterns,
    each completed to an actual count vector when one exists.
    """
    _check_knot_input(F)
    eng = engine(F, extended)
    deg = F.degree
    caps = eng.caps
    report = KnotIndexReport(deg, [])
    for iota in range(-(deg - deg % 8), deg + 1, 8):
        r, s = (deg + iota) // 2, (deg - iota) // 2
        t = SignatureTarget(r, s)
        if eng.gate(t) is not None:
            continue
        total = (s - eng.m) // 2
        reasons = []
        for bits in product((0, 1), repeat=len(F)):
            x = _parity_box(caps, total, bits)
            if x is None:
                continue
            rep = eng.milnor(t, MilnorProfile(x))
            if rep.verdict == REALIZABLE:
                report.realizable_indices.append(iota)
                report.witnesses[iota] = tuple(x)
                break
            if rep.verdict == UNDETERMINED:
                reasons.append(rep.reason)
        else:
            if reasons:
                report.refused[iota] = reasons[0]
    return report


def three_torus_sh(p: int, p1: int, p2: int) -> ShGroup:
    """Sh of the (p, p1 p2) torus knot for distinct primes = 3 mod 4."""
    ps = (p, p1, p2)
    if len(set(ps)) != 3 or not all(is_prime(q) and q % 4 == 3 for q in ps):
        raise BadSpec(f"need three distinct primes = 3 mod 4, got {ps}")
    return sh_group(torus_alexander(TorusKnotSpec(p, p1 * p2)))


__all__ = [
    "KnotIndexReport",
    "TorusKnotSpec",
    "is_unramified",
    "knot_milnor_realizable",
    "legendre",
    "realizable_indices",
    "three_torus_sh",
    "torus_alexander",
]
