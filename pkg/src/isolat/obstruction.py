"""Prime sets V_{f,g}, the factor equivalence relation and the group Sh.

Factor indices are positions in the caller's factor list (0-based here;
the CLI prints them 1-based).  Sh is stored as a partition of the
indices; its elements are parity vectors constant on classes, with the
class of index 0 pinned to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .arith import (
    DEFAULT_RHO_ROUNDS,
    DEFAULT_TRIAL_LIMIT,
    factor_integer,
    is_prime,
    primes_up_to,
)
from .errors import DomainMismatch, ResultantZero, UnresolvedCofactor, ValidationError
from .fppoly import (
    FpPoly,
    gcd_mod,
    has_common_symmetric_factor,
    has_symmetric_irreducible_factor,
    reduce_mod,
    symmetric_irreducible_factors,
)
from .intpoly import IntPoly, cyclotomic, derivative, gcd, is_symmetric, resultant
from .realroots import factor_pairs

VERIFIED = "verified"
ASSERTED = "asserted"


@dataclass(frozen=True)
class Factor:
    poly: IntPoly
    mult: int
    cyclotomic_index: int | None = None

    @property
    def degree(self) -> int:
        return self.poly.degree


def _validate_factor(fac: Factor) -> None:
    f = fac.poly
    if fac.mult < 1:
        raise ValidationError("multiplicities must be positive")
    if fac.cyclotomic_index is not None:
        if fac.cyclotomic_index < 3:
            raise ValidationError(f"Phi({fac.cyclotomic_index}) is a linear factor")
        return
    if not f.is_monic:
        raise ValidationError(f"factor {f} is not monic")
    if f.degree < 2 or f.degree % 2:
        raise ValidationError(f"factor {f} must have even degree >= 2")
    if not is_symmetric(f):
        raise ValidationError(f"factor {f} is not symmetric")
    if gcd(f, derivative(f)).degree > 0:
        raise ValidationError(f"factor {f} is not squarefree")


@dataclass(frozen=True)
class FactoredCharPoly:
    """F = prod f_i^{n_i} with distinct symmetric factors of even degree."""

    factors: tuple[Factor, ...]

    def __init__(self, factors: Iterable, validate: bool = True):
        facs = []
        for item in factors:
            if isinstance(item, Factor):
                facs.append(item)
            else:
                poly, mult = item
                facs.append(Factor(poly, mult))
        object.__setattr__(self, "factors", tuple(facs))
        if validate:
            self._validate()

    @classmethod
    def from_cyclotomic(cls, spec) -> FactoredCharPoly:
        """Build from {m: n} or an iterable of (m, n)."""
        items = spec.items() if isinstance(spec, dict) else spec
        return cls(Factor(cyclotomic(m), n, m) for m, n in items)

    def _validate(self) -> None:
        if not self.factors:
            raise ValidationError("need at least one factor")
        for fac in self.factors:
            _validate_factor(fac)
        for a, b in combinations(self.factors, 2):
            if a.cyclotomic_index is not None and b.cyclotomic_index is not None:
                clash = a.cyclotomic_index == b.cyclotomic_index
            else:
                clash = gcd(a.poly, b.poly).degree > 0
            if clash:
                raise ValidationError(f"factors {a.poly} and {b.poly} are not coprime")

    @property
    def trust(self) -> str:
        if all(f.cyclotomic_index is not None for f in self.factors):
            return VERIFIED
        return ASSERTED

    @property
    def degree(self) -> int:
        return sum(f.mult * f.degree for f in self.factors)

    @property
    def is_cyclotomic(self) -> bool:
        return self.trust == VERIFIED

    def __len__(self) -> int:
        return len(self.factors)

    def polys(self) -> list[IntPoly]:
        return [f.poly for f in self.factors]

    def expand(self) -> IntPoly:
        out = IntPoly.const(1)
        for f in self.factors:
            out = out * f.poly**f.mult
        return out

    def subset(self, indices: Sequence[int]) -> FactoredCharPoly:
        return FactoredCharPoly([self.factors[i] for i in indices], validate=False)


@dataclass(frozen=True)
class ParityVector:
    values: tuple[int, ...]

    def __init__(self, values: Iterable[int]):
        object.__setattr__(self, "values", tuple(int(v) % 2 for v in values))

    @classmethod
    def zero(cls, n: int) -> ParityVector:
        return cls([0] * n)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __add__(self, other: ParityVector) -> ParityVector:
        if len(self) != len(other):
            raise DomainMismatch("parity vectors over different index sets")
        return ParityVector(a ^ b for a, b in zip(self.values, other.values))

    def weight(self) -> int:
        return sum(self.values)

    def to_list(self) -> list[int]:
        return list(self.values)


def eval_character(c: ParityVector, a: ParityVector) -> int:
    if len(c) != len(a):
        raise DomainMismatch(f"index sets differ: {len(c)} vs {len(a)}")
    return sum(x & y for x, y in zip(c.values, a.values)) % 2


# -- candidate primes and V_{f,g} ------------------------------------------


@dataclass(frozen=True)
class CandidatePrimes:
    primes: tuple[int, ...]
    unresolved: tuple[int, ...] = ()

    def __iter__(self):
        return iter(self.primes)


def _p_free(m: int, p: int) -> int:
    while m % p == 0:
        m //= p
    return m


def _ratio_prime(m: int, n: int) -> int | None:
    """p if m/n or n/m is a positive power of the prime p, else None."""
    big, small = max(m, n), min(m, n)
    if big % small:
        return None
    q = big // small
    for p in factor_integer(q).primes:
        return p if _p_free(q, p) == 1 else None
    return None


def _minus_one_is_power(p: int, m: int) -> bool:
    """Whether -1 is a power of p in (Z/m)^x; m >= 3, gcd(p, m) = 1."""
    x = p % m
    seen = 0
    while x != 1:
        if x == m - 1:
            return True
        x = x * p % m
        seen += 1
        if seen > m:
            break
    return False


def cyclotomic_has_symmetric_factor(m: int, p: int) -> bool:
    """Whether Phi_m mod p has a self-reciprocal irreducible factor.

    Phi_m = Phi_{m'}^k mod p for m' the p-free part of m; Phi_1, Phi_2 are
    linear and self-reciprocal, and for m' >= 3 the factors of Phi_{m'}
    are self-reciprocal exactly when -1 is a power of p mod m'.  The
    group-theoretic test is only used for odd p; p = 2 is factored.
    """
    mp = _p_free(m, p)
    if mp <= 2:
        return True
    if p == 2:
        return has_symmetric_irreducible_factor(reduce_mod(cyclotomic(mp), 2))
    return _minus_one_is_power(p, mp)


def candidate_primes(
    f: IntPoly | Factor,
    g: IntPoly | Factor,
    trial_limit: int = DEFAULT_TRIAL_LIMIT,
    rho_rounds: int = DEFAULT_RHO_ROUNDS,
) -> CandidatePrimes:
    """Primes dividing Res(f, g); any common factor mod p forces one."""
    fa, ga = _as_factor(f), _as_factor(g)
    if fa.cyclotomic_index is not None and ga.cyclotomic_index is not None:
        m, n = fa.cyclotomic_index, ga.cyclotomic_index
        if m == n:
            raise ResultantZero(f"Phi({m}) appears twice")
        # Res(Phi_m, Phi_n) is a power of p when m/n = p^e, else 1.
        p = _ratio_prime(m, n)
        return CandidatePrimes(() if p is None else (p,))
    res = resultant(fa.poly, ga.poly)
    if res == 0:
        raise ResultantZero(f"{fa.poly} and {ga.poly} share a rational factor")
    fac = factor_integer(res, trial_limit, rho_rounds)
    return CandidatePrimes(tuple(fac.primes), tuple(fac.unresolved))


def _as_factor(f) -> Factor:
    return f if isinstance(f, Factor) else Factor(f, 1)


def common_factor_at(f: IntPoly | Factor, g: IntPoly | Factor, p: int) -> bool:
    fa, ga = _as_factor(f), _as_factor(g)
    if fa.cyclotomic_index is not None and ga.cyclotomic_index is not None:
        m, n = fa.cyclotomic_index, ga.cyclotomic_index
        if _p_free(m, p) != _p_free(n, p):
            return False
        return cyclotomic_has_symmetric_factor(m, p)
    return has_common_symmetric_factor(fa.poly, ga.poly, p)


def common_symmetric_factors(f: IntPoly, g: IntPoly, p: int) -> list[FpPoly]:
    """The shared self-reciprocal irreducible factors mod p, for audits."""
    common = gcd_mod(reduce_mod(f, p), reduce_mod(g, p))
    if common.degree < 1:
        return []
    return symmetric_irreducible_factors(common, include_linear=True)


@dataclass(frozen=True)
class VSet:
    primes: tuple[int, ...]
    unresolved: tuple[int, ...] = ()

    def __iter__(self):
        return iter(self.primes)

    def __bool__(self) -> bool:
        return bool(self.primes)


def v_set_detail(f, g, trial_limit=DEFAULT_TRIAL_LIMIT, rho_rounds=DEFAULT_RHO_ROUNDS) -> VSet:
    cand = candidate_primes(f, g, trial_limit, rho_rounds)
    hits = tuple(p for p in cand.primes if common_factor_at(f, g, p))
    return VSet(hits, cand.unresolved)


def v_set(f, g, trial_limit=DEFAULT_TRIAL_LIMIT, rho_rounds=DEFAULT_RHO_ROUNDS) -> list[int]:
    """Primes at which f and g share a self-reciprocal irreducible factor.

    Raises UnresolvedCofactor when the resultant could not be fully
    factored and no witness prime was found among the known factors.
    """
    vs = v_set_detail(f, g, trial_limit, rho_rounds)
    if vs.unresolved and not vs.primes:
        raise UnresolvedCofactor(vs.unresolved[0])
    return list(vs.primes)


# -- Sh -------------------------------------------------------------------


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self) -> list[tuple[int, ...]]:
        groups: dict[int, list[int]] = {}
        for i in range(len(self.parent)):
            groups.setdefault(self.find(i), []).append(i)
        return sorted((tuple(g) for g in groups.values()), key=lambda c: c[0])


@dataclass(frozen=True)
class ShGroup:
    size: int
    classes: tuple[tuple[int, ...], ...]
    edges: dict = field(default_factory=dict, compare=False)
    unresolved: tuple = ()
    upper_bound: bool = False

    @property
    def rank(self) -> int:
        return len(self.classes) - 1

    @property
    def basis(self) -> list[ParityVector]:
        out = []
        for cls in self.classes[1:]:
            members = set(cls)
            out.append(ParityVector(1 if i in members else 0 for i in range(self.size)))
        return out

    def class_of(self, i: int) -> int:
        for k, cls in enumerate(self.classes):
            if i in cls:
                return k
        raise IndexError(i)

    def is_class_constant(self, c: ParityVector) -> bool:
        return all(len({c[i] for i in cls}) == 1 for cls in self.classes)


def _partition(n: int, edges: Iterable[tuple[int, int]]) -> tuple[tuple[int, ...], ...]:
    dsu = _DSU(n)
    for i, j in edges:
        dsu.union(i, j)
    return tuple(dsu.classes())


def sh_group(
    F: FactoredCharPoly,
    trial_limit: int = DEFAULT_TRIAL_LIMIT,
    rho_rounds: int = DEFAULT_RHO_ROUNDS,
    raise_unresolved: bool = True,
) -> ShGroup:
    """Classes of the relation generated by V_{i,j} != {}.

    A pair whose resultant kept an unfactored cofactor, with no witness
    among the known primes, is recorded in ``unresolved``; by default that
    raises UnresolvedCofactor once the partition shows it could matter.
    """
    n = len(F)
    facs = F.factors
    edges: dict[tuple[int, int], list[int]] = {}
    pending = []
    for i, j in combinations(range(n), 2):
        vs = v_set_detail(facs[i], facs[j], trial_limit, rho_rounds)
        edges[(i, j)] = list(vs.primes)
        if vs.unresolved and not vs.primes:
            pending.append((i, j, vs.unresolved[0]))
    classes = _partition(n, (e for e, ps in edges.items() if ps))
    where = {i: k for k, cls in enumerate(classes) for i in cls}
    # An unresolved pair already joined by other edges cannot change anything.
    live = tuple(u for u in pending if where[u[0]] != where[u[1]])
    if live and raise_unresolved:
        i, j, cof = live[0]
        raise UnresolvedCofactor(cof, (i, j))
    return ShGroup(n, classes, edges, live)


def local_set(fac: Factor, prime_bound: int) -> set:
    """Bounded stand-in for V_i: "inf" plus small primes with a symmetric factor."""
    out: set = set()
    if factor_pairs(fac) > 0:
        out.add("inf")
    for p in primes_up_to(prime_bound):
        if fac.cyclotomic_index is not None:
            hit = cyclotomic_has_symmetric_factor(fac.cyclotomic_index, p)
        else:
            hit = has_symmetric_irreducible_factor(reduce_mod(fac.poly, p))
        if hit:
            out.add(p)
    return out


def sh_rational_bounded(F: FactoredCharPoly, prime_bound: int = 1000) -> ShGroup:
    """Upper bound for the rational group: classes merged on V_i and V_j meeting.

    Witnesses above the bound are never seen, and missing witnesses can
    only merge classes, so the true group is a quotient of this one.
    """
    sets = [local_set(fac, prime_bound) for fac in F.factors]
    edges = {}
    for i, j in combinations(range(len(F)), 2):
        common = sets[i] & sets[j]
        edges[(i, j)] = sorted(common, key=lambda v: (v != "inf", v if v != "inf" else 0))
    classes = _partition(len(F), (e for e, ps in edges.items() if ps))
    return ShGroup(len(F), classes, edges, upper_bound=True)


__all__ = [
    "ASSERTED",
    "VERIFIED",
    "CandidatePrimes",
    "Factor",
    "FactoredCharPoly",
    "ParityVector",
    "ShGroup",
    "VSet",
    "candidate_primes",
    "common_factor_at",
    "common_symmetric_factors",
    "cyclotomic_has_symmetric_factor",
    "eval_character",
    "is_prime",
    "local_set",
    "sh_group",
    "sh_rational_bounded",
    "v_set",
    "v_set_detail",
]
