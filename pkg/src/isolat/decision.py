"""Decide whether an even unimodular lattice of signature (r, s) carries a
semisimple isometry with a given characteristic polynomial.

The rule chain, first match wins:

    C1/C2 gate        necessary conditions fail         -> not realizable
    sh-trivial        Sh = 0                            -> realizable
    cyclotomic        every factor cyclotomic: exhaustive parity test of
                      eps + eps_a over the real data    -> either verdict
    two-factor        two factors, signature not maximal -> realizable
    class-split       each Sh class gets its own signature satisfying the
                      gates; orthogonal sum of the pieces -> realizable
    (extended only)   no class split exists             -> not realizable
    otherwise                                           -> undetermined
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .arith import (
    DEFAULT_RHO_ROUNDS,
    DEFAULT_TRIAL_LIMIT,
    euler_phi,
    factor_integer,
    multiplicative_order,
)
from .errors import (
    BadInput,
    Infeasible,
    InternalInconsistency,
    RamifiedCyclotomic,
    UnresolvedCofactor,
)
from .fppoly import count_symmetric_irreducible_factors, reduce_mod
from .intpoly import cyclotomic, evaluate, is_perfect_square
from .obstruction import FactoredCharPoly, ParityVector, ShGroup, eval_character, sh_group
from .realroots import factor_m, factor_pairs

REALIZABLE = "realizable"
NOT_REALIZABLE = "not_realizable"
UNDETERMINED = "undetermined"

# Parity vectors are enumerated over all 2^|I| patterns.
MAX_FACTORS = 20

# Counts InternalInconsistency raises; the acceptance suite asserts zero.
inconsistency_counter = {"count": 0}


def _inconsistent(msg: str) -> InternalInconsistency:
    inconsistency_counter["count"] += 1
    return InternalInconsistency(msg)


@dataclass(frozen=True)
class SignatureTarget:
    r: int
    s: int

    def __post_init__(self):
        if self.r < 0 or self.s < 0:
            raise BadInput("signature entries must be nonnegative")

    @property
    def index(self) -> int:
        return self.r - self.s


@dataclass(frozen=True)
class MilnorProfile:
    """neg_pairs[i]: negative unit-circle eigen-pairs assigned to factor i."""

    neg_pairs: tuple[int, ...]

    def __init__(self, neg_pairs):
        object.__setattr__(self, "neg_pairs", tuple(int(v) for v in neg_pairs))

    def parity(self) -> ParityVector:
        return ParityVector(self.neg_pairs)


@dataclass(frozen=True)
class Epsilon:
    per_prime: dict
    total: ParityVector
    source: str  # "finite-primes" or "class-signature"


@dataclass(frozen=True)
class C1Report:
    at_one: int
    at_minus_one: int
    product: int
    passed: bool


@dataclass(frozen=True)
class C2Report:
    m: int
    degree: int
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass
class DecisionReport:
    verdict: str
    rule: str
    reason: str | None = None
    c1: C1Report | None = None
    c2: C2Report | None = None
    sh: ShGroup | None = None
    epsilon: Epsilon | None = None
    real_data: list = field(default_factory=list)
    witness: ParityVector | None = None
    split: tuple | None = None
    trust: str | None = None


# -- C1 / C2 ----------------------------------------------------------------


def _c1_values(F: FactoredCharPoly) -> tuple[int, int, int]:
    at1 = at_m1 = 1
    for fac in F.factors:
        at1 *= evaluate(fac.poly, 1) ** fac.mult
        at_m1 *= evaluate(fac.poly, -1) ** fac.mult
    n = F.degree // 2
    return at1, at_m1, (-1) ** n * at1 * at_m1


def check_c1(F: FactoredCharPoly) -> C1Report:
    a, b, c = _c1_values(F)
    ok = is_perfect_square(abs(a)) and is_perfect_square(abs(b)) and is_perfect_square(c)
    return C1Report(abs(a), abs(b), c, ok)


def _c2_failures(degree: int, m: int, r: int, s: int) -> tuple[str, ...]:
    bad = []
    if r + s != degree:
        bad.append(f"r + s = {r + s} but the degree is {degree}")
    if (r - s) % 8:
        bad.append("r - s is not divisible by 8")
    if r < m or s < m:
        bad.append(f"r and s must be at least m = {m}")
    if (r - m) % 2 or (s - m) % 2:
        bad.append(f"r and s must have the parity of m = {m}")
    return tuple(bad)


def check_c2(F: FactoredCharPoly, t: SignatureTarget) -> C2Report:
    m = sum(f.mult * factor_m(f) for f in F.factors)
    return C2Report(m, F.degree, _c2_failures(F.degree, m, t.r, t.s))


# -- real data ----------------------------------------------------------------


def _pair_caps(F: FactoredCharPoly) -> list[int]:
    return [f.mult * factor_pairs(f) for f in F.factors]


def _parity_box(caps: list[int], total: int, parity: tuple[int, ...]) -> list[int] | None:
    """A vector 0 <= x_i <= caps[i] with x_i = parity[i] mod 2 and sum total."""
    if any(b > c for b, c in zip(parity, caps)):
        return None
    lo = sum(parity)
    tops = [c - ((c - b) % 2) for b, c in zip(parity, caps)]
    if not (lo <= total <= sum(tops)) or (total - lo) % 2:
        return None
    x = list(parity)
    need = total - lo
    for i, top in enumerate(tops):
        step = min(need, top - x[i])
        x[i] += step
        need -= step
    return x


def _neg_pair_total(F: FactoredCharPoly, t: SignatureTarget) -> int:
    m = sum(f.mult * factor_m(f) for f in F.factors)
    twice = t.s - m
    if twice < 0 or twice % 2:
        raise Infeasible(f"s = {t.s} is not m + 2k for m = {m}")
    return twice // 2


def _real_witnesses(F: FactoredCharPoly, t: SignatureTarget) -> dict[ParityVector, list[int]]:
    if len(F) > MAX_FACTORS:
        raise BadInput(f"at most {MAX_FACTORS} factors are supported")
    caps = _pair_caps(F)
    total = _neg_pair_total(F, t)
    out = {}
    for bits in product((0, 1), repeat=len(F)):
        x = _parity_box(caps, total, bits)
        if x is not None:
            out[ParityVector(bits)] = x
    if not out:
        raise Infeasible("no distribution of negative pairs matches the signature")
    return out


def real_local_data(F: FactoredCharPoly, t: SignatureTarget) -> list[ParityVector]:
    """Parities of the feasible per-factor negative-pair counts, deduplicated."""
    return sorted(_real_witnesses(F, t), key=lambda a: a.values)


# -- epsilon ------------------------------------------------------------------


def _is_ramified(m: int) -> bool:
    """Phi_m with m = l^k or 2 l^k has a ramified finite place."""
    odd = m // 2 if m % 2 == 0 and (m // 2) % 2 else m
    return len(factor_integer(odd).primes) <= 1


def _p_free(m: int, p: int) -> int:
    while m % p == 0:
        m //= p
    return m


# Above this degree the mod-p factor count comes from the order of p alone.
DIRECT_COUNT_DEGREE = 400


def _symmetric_count(m: int, p: int) -> int:
    """Distinct self-reciprocal irreducible factors of Phi_m mod p.

    Phi_m = Phi_{m'}^k mod p for the p-free part m'.  Phi_{m'} splits into
    phi(m')/d factors of degree d = ord_{m'}(p), all self-reciprocal when
    -1 is a power of p mod m' and none otherwise.  Small cases are also
    factored directly and the two counts compared.
    """
    mp = _p_free(m, p)
    order = multiplicative_order(p, mp)
    phi = euler_phi(mp)
    count = phi // order if pow(p, order // 2, mp) == mp - 1 and order % 2 == 0 else 0
    if phi <= DIRECT_COUNT_DEGREE:
        direct = count_symmetric_irreducible_factors(reduce_mod(cyclotomic(mp), p))
        if direct != count:
            raise _inconsistent(f"Phi({mp}) mod {p}: {direct} symmetric factors, expected {count}")
    return count


def epsilon_cyclotomic(F: FactoredCharPoly) -> Epsilon:
    """Finite-place data for a product of unramified cyclotomic factors.

    a^p(i) is n_i times the number of self-reciprocal irreducible factors
    of Phi_{m_i} mod p, for odd p dividing m_i.  The sum over p must agree
    with n_i * phi(m_i) / 4 mod 2, which is checked.
    """
    ms = []
    for fac in F.factors:
        m = fac.cyclotomic_index
        if m is None:
            raise RamifiedCyclotomic("not a cyclotomic factor")
        if _is_ramified(m):
            raise RamifiedCyclotomic(f"Phi({m}) is ramified")
        ms.append(m)
    primes = sorted({p for m in ms for p in factor_integer(m).primes if p > 2})
    per_prime = {}
    total = ParityVector.zero(len(F))
    for p in primes:
        vals = [
            fac.mult * _symmetric_count(m, p) if m % p == 0 else 0
            for m, fac in zip(ms, F.factors)
        ]
        vec = ParityVector(vals)
        per_prime[p] = vec
        total = total + vec
    expect = ParityVector(fac.mult * euler_phi(m) // 4 for m, fac in zip(ms, F.factors))
    if total != expect:
        raise _inconsistent(f"finite data {total.values} disagree with degree count {expect.values}")
    return Epsilon(per_prime, total, "finite-primes")


def class_epsilon(F: FactoredCharPoly, sh: ShGroup) -> tuple[Epsilon, list[int]]:
    """Epsilon read off from signatures, one value per Sh class.

    A class J with k_J unit-circle pairs (with multiplicity) must carry
    sum of sigma_i = k_J / 2 mod 2 on its own even unimodular piece.  The
    value sits on the class's first index.  Classes with k_J odd can
    never be realized and are returned separately.
    """
    caps = _pair_caps(F)
    vals = [0] * len(F)
    dead = []
    for k, cls in enumerate(sh.classes):
        kj = sum(caps[i] for i in cls)
        if kj % 2:
            dead.append(k)
        vals[cls[0]] = (kj // 2) % 2
    return Epsilon({}, ParityVector(vals), "class-signature"), dead


def passes(sh: ShGroup, eps: ParityVector, a: ParityVector) -> bool:
    combined = eps + a
    return all(eval_character(c, combined) == 0 for c in sh.basis)


# -- the engine -------------------------------------------------------------


class _Engine:
    """Caches everything about F that does not depend on the signature."""

    def __init__(self, F: FactoredCharPoly, extended: bool, trial_limit: int, rho_rounds: int):
        self.F = F
        self.extended = extended
        self.trial_limit = trial_limit
        self.rho_rounds = rho_rounds

    @cached_property
    def c1(self) -> C1Report:
        return check_c1(self.F)

    @cached_property
    def ms(self) -> list[int]:
        return [factor_m(f) for f in self.F.factors]

    @cached_property
    def m(self) -> int:
        return sum(f.mult * mi for f, mi in zip(self.F.factors, self.ms))

    @cached_property
    def caps(self) -> list[int]:
        return _pair_caps(self.F)

    @cached_property
    def sh(self) -> ShGroup:
        return sh_group(self.F, self.trial_limit, self.rho_rounds)

    @cached_property
    def class_data(self) -> list[tuple[int, int, bool]]:
        """(degree, m, C1 holds) for each Sh class."""
        out = []
        for cls in self.sh.classes:
            sub = self.F.subset(cls)
            out.append((sub.degree, sum(self.F.factors[i].mult * self.ms[i] for i in cls), check_c1(sub).passed))
        return out

    @cached_property
    def epsilon(self) -> tuple[Epsilon | None, str | None]:
        if not self.F.is_cyclotomic:
            return None, None
        try:
            return epsilon_cyclotomic(self.F), None
        except RamifiedCyclotomic as exc:
            return class_epsilon(self.F, self.sh)[0], str(exc)

    def c2(self, t: SignatureTarget) -> C2Report:
        return C2Report(self.m, self.F.degree, _c2_failures(self.F.degree, self.m, t.r, t.s))

    def class_split(self, s: int, fixed: list[int] | None = None) -> tuple | None:
        """Per-class s_J summing to s with every class passing C1 and C2.

        With ``fixed`` the s_J are forced, as when a Milnor profile pins
        the negative pairs of every factor.
        """
        options = []
        for k, (d, m, c1) in enumerate(self.class_data):
            if not c1:
                return None
            if fixed is not None:
                cand = [fixed[k]]
            else:
                cand = range(m, d - m + 1)
            ok = [sj for sj in cand if not _c2_failures(d, m, d - sj, sj)]
            if not ok:
                return None
            options.append(ok)
        # Subset-sum over classes, remembering one choice per reachable total.
        reach = {0: ()}
        for ok in options:
            nxt = {}
            for tot, pick in reach.items():
                for sj in ok:
                    if tot + sj <= s and tot + sj not in nxt:
                        nxt[tot + sj] = pick + (sj,)
            reach = nxt
        return reach.get(s)

    def gate(self, t: SignatureTarget) -> DecisionReport | None:
        c2 = self.c2(t)
        base = dict(c1=self.c1, c2=c2, trust=self.F.trust)
        if not self.c1.passed:
            return DecisionReport(NOT_REALIZABLE, "C1", "a value at 1 or -1 is not a square", **base)
        if not c2.passed:
            return DecisionReport(NOT_REALIZABLE, "C2", "; ".join(c2.failures), **base)
        return None

    def sh_or_unresolved(self, t: SignatureTarget) -> DecisionReport | ShGroup:
        try:
            return self.sh
        except UnresolvedCofactor as exc:
            return DecisionReport(
                UNDETERMINED, "unresolved", f"unfactored resultant cofactor {exc.cofactor}",
                c1=self.c1, c2=self.c2(t), trust=self.F.trust,
            )

    def _reciprocity(self, eps: ParityVector, data: list[ParityVector]) -> None:
        totals = {a.weight() % 2 for a in data}
        if len(totals) > 1:
            raise _inconsistent("real data disagree on total parity")
        if totals and (eps.weight() + totals.pop()) % 2:
            raise _inconsistent("finite and real data violate reciprocity")

    def lattice(self, t: SignatureTarget) -> DecisionReport:
        gated = self.gate(t)
        if gated:
            return gated
        sh = self.sh_or_unresolved(t)
        if isinstance(sh, DecisionReport):
            return sh
        base = dict(c1=self.c1, c2=self.c2(t), sh=sh, trust=self.F.trust)
        if sh.rank == 0:
            return DecisionReport(REALIZABLE, "sh-trivial", **base)

        split = self.class_split(t.s)
        eps, ramified = self.epsilon
        if eps is not None:
            data = real_local_data(self.F, t)
            self._reciprocity(eps.total, data)
            good = [a for a in data if passes(sh, eps.total, a)]
            ok = bool(good) and (ramified is None or split is not None)
            if ok != (split is not None):
                raise _inconsistent("parity test and class split disagree")
            rule = "cyclotomic" if ramified is None else "cyclotomic-class-signature"
            if ok:
                return DecisionReport(REALIZABLE, rule, None, epsilon=eps, real_data=data,
                                      witness=good[0], split=split, **base)
            why = "no real datum cancels the finite data" if not good else "a class fails C1"
            return DecisionReport(NOT_REALIZABLE, rule, why, epsilon=eps, real_data=data, **base)

        if len(self.F) == 2 and self.m not in (t.r, t.s):
            return DecisionReport(REALIZABLE, "two-factor", **base)
        if split is not None:
            return DecisionReport(REALIZABLE, "class-split", split=split, **base)
        if self.extended:
            eps, _ = class_epsilon(self.F, sh)
            return DecisionReport(NOT_REALIZABLE, "class-signature", "no class split exists",
                                  epsilon=eps, **base)
        return DecisionReport(UNDETERMINED, "none", "epsilon requires non-cyclotomic local data", **base)

    def check_profile(self, t: SignatureTarget, prof: MilnorProfile) -> None:
        if len(prof.neg_pairs) != len(self.F):
            raise BadInput("profile length differs from the number of factors")
        for v, cap in zip(prof.neg_pairs, self.caps):
            if not 0 <= v <= cap:
                raise BadInput(f"negative pair count {v} outside [0, {cap}]")
        if 2 * sum(prof.neg_pairs) + self.m != t.s:
            raise BadInput("profile does not induce the target signature")

    def milnor(self, t: SignatureTarget, prof: MilnorProfile) -> DecisionReport:
        self.check_profile(t, prof)
        gated = self.gate(t)
        if gated:
            return gated
        sh = self.sh_or_unresolved(t)
        if isinstance(sh, DecisionReport):
            return sh
        base = dict(c1=self.c1, c2=self.c2(t), sh=sh, trust=self.F.trust)
        a = prof.parity()
        if sh.rank == 0:
            return DecisionReport(REALIZABLE, "sh-trivial", witness=a, **base)
        fixed = [
            sum(self.F.factors[i].mult * self.ms[i] + 2 * prof.neg_pairs[i] for i in cls)
            for cls in sh.classes
        ]
        split = self.class_split(t.s, fixed)
        eps, ramified = self.epsilon
        if eps is not None:
            self._reciprocity(eps.total, [a])
            ok = passes(sh, eps.total, a) and (ramified is None or split is not None)
            if ok != (split is not None):
                raise _inconsistent("parity test and class split disagree")
            rule = "cyclotomic" if ramified is None else "cyclotomic-class-signature"
            if ok:
                return DecisionReport(REALIZABLE, rule, epsilon=eps, real_data=[a], witness=a, **base)
            return DecisionReport(NOT_REALIZABLE, rule, "profile parity does not cancel the finite data",
                                  epsilon=eps, real_data=[a], **base)
        if split is not None:
            return DecisionReport(REALIZABLE, "class-split", split=split, witness=a, **base)
        if self.extended:
            eps, _ = class_epsilon(self.F, sh)
            return DecisionReport(NOT_REALIZABLE, "class-signature", "no class split exists",
                                  epsilon=eps, **base)
        return DecisionReport(UNDETERMINED, "none", "epsilon requires non-cyclotomic local data", **base)


def engine(
    F: FactoredCharPoly,
    extended: bool = False,
    trial_limit: int = DEFAULT_TRIAL_LIMIT,
    rho_rounds: int = DEFAULT_RHO_ROUNDS,
) -> _Engine:
    """Reusable engine for many signatures or profiles of one F."""
    return _Engine(F, extended, trial_limit, rho_rounds)


def decide_lattice(F: FactoredCharPoly, t: SignatureTarget, extended: bool = False, **kw) -> DecisionReport:
    return engine(F, extended, **kw).lattice(t)


def decide_milnor(
    F: FactoredCharPoly, t: SignatureTarget, m: MilnorProfile, extended: bool = False, **kw
) -> DecisionReport:
    return engine(F, extended, **kw).milnor(t, m)
