import itertools

import pytest

from conftest import SALEM6, SALEM10, SALEM12, cyc
from isolat.arith import euler_phi, factor_integer
from isolat.decision import (
    NOT_REALIZABLE,
    REALIZABLE,
    UNDETERMINED,
    MilnorProfile,
    SignatureTarget,
    _is_ramified,
    _symmetric_count,
    check_c1,
    check_c2,
    decide_lattice,
    decide_milnor,
    engine,
    epsilon_cyclotomic,
    real_local_data,
)
from isolat.errors import BadInput, Infeasible, RamifiedCyclotomic
from isolat.intpoly import IntPoly
from isolat.obstruction import Factor, FactoredCharPoly, ParityVector, sh_group

PV = ParityVector


def C(spec):
    return FactoredCharPoly.from_cyclotomic(spec)


def signatures(degree):
    return [(degree - s, s) for s in range(degree + 1) if (degree - 2 * s) % 8 == 0]


def test_c1_examples(salem6_char):
    rep = check_c1(C({7: 2, 14: 2}))
    assert (rep.at_one, rep.at_minus_one, rep.product, rep.passed) == (49, 49, 49 * 49, True)
    rep = check_c1(salem6_char)
    assert (rep.at_one, rep.at_minus_one, rep.product, rep.passed) == (1, 1, 1, True)
    assert check_c1(C({21: 1})).passed
    assert not check_c1(C({3: 1})).passed  # Phi_3(1) = 3


def test_c2_examples(salem6_char):
    assert check_c2(C({7: 2, 14: 2}), SignatureTarget(24, 0)).passed
    assert check_c2(salem6_char, SignatureTarget(9, 1)).passed
    assert not check_c2(salem6_char, SignatureTarget(10, 0)).passed
    assert not check_c2(C({21: 1, 147: 1}), SignatureTarget(50, 46)).passed


def test_real_local_data_examples():
    F = C({21: 1, 147: 1})
    assert real_local_data(F, SignatureTarget(92, 4)) == [PV([0, 0]), PV([1, 1])]
    assert real_local_data(F, SignatureTarget(96, 0)) == [PV([0, 0])]
    assert real_local_data(F, SignatureTarget(48, 48)) == [PV([0, 0]), PV([1, 1])]
    with pytest.raises(Infeasible):
        real_local_data(F, SignatureTarget(95, 1))


def test_epsilon_examples():
    eps = epsilon_cyclotomic(C({21: 1, 147: 1}))
    assert eps.per_prime == {3: PV([1, 1]), 7: PV([0, 0])}
    assert eps.total == PV([1, 1])
    # Conductors built only from primes = 1 mod 4 carry no finite data.
    eps = epsilon_cyclotomic(C({65: 1, 5 * 13 * 13: 1}))
    assert eps.total == PV([0, 0])
    with pytest.raises(RamifiedCyclotomic):
        epsilon_cyclotomic(C({7: 1, 21: 1}))


@pytest.mark.parametrize("p, q", [(3, 7), (7, 11), (11, 19), (3, 19)])
def test_epsilon_prime_pair_family_with_nonresidue(p, q):
    # p = q = 3 mod 4 and p a non-residue mod q: all data sit at p.
    from isolat.arith import legendre

    if legendre(p, q) != -1:
        p, q = q, p
    eps = epsilon_cyclotomic(C({p * q: 1, p * q * q: 1}))
    assert eps.per_prime[p] == PV([1, 1])
    assert eps.per_prime[q] == PV([0, 0])
    assert eval_c(sh_group(C({p * q: 1, p * q * q: 1})), eps.total) == 1


def eval_c(sh, vec):
    from isolat.obstruction import eval_character

    return eval_character(sh.basis[0], vec)


def test_finite_data_parity_matches_degree_count():
    # Sum over odd p | m of the number of self-reciprocal factors of
    # Phi_m mod p is phi(m)/4 mod 2 for every unramified m.
    for m in range(3, 500):
        if _is_ramified(m):
            continue
        total = sum(_symmetric_count(m, p) for p in factor_integer(m).primes if p > 2)
        assert total % 2 == (euler_phi(m) // 4) % 2, m


def test_e8_sum_counterexample_to_residue_only_rule():
    # E8 carries Phi_30 (a Coxeter element) and Phi_15 (its negative), so
    # E8 + E8 realizes Phi_15 * Phi_30 in signature (16, 0).  Counting
    # only primes = 3 mod 4 would put finite data (1, 1) here and refuse.
    F = C({15: 1, 30: 1})
    assert sh_group(F).rank == 1
    rep = decide_lattice(F, SignatureTarget(16, 0))
    assert rep.verdict == REALIZABLE and rep.rule == "cyclotomic"
    assert rep.epsilon.total == PV([0, 0])


def test_phi15_phi21_indefinite():
    rep = decide_lattice(C({15: 1, 21: 1}), SignatureTarget(18, 2))
    assert rep.verdict == REALIZABLE
    assert rep.witness == PV([0, 1])


def test_gate_rules(salem6_char):
    assert decide_lattice(C({3: 1}), SignatureTarget(2, 0)).rule == "C1"
    assert decide_lattice(salem6_char, SignatureTarget(10, 0)).rule == "C2"


def test_definite_phi7_phi14_squares_refused():
    rep = decide_lattice(C({7: 2, 14: 2}), SignatureTarget(24, 0))
    assert rep.c1.passed and rep.c2.passed
    assert rep.verdict == NOT_REALIZABLE
    assert rep.rule == "cyclotomic-class-signature"


def test_sh_trivial_realizes_every_gated_signature():
    for F in (C({3: 2, 6: 2}), C({21: 1, 63: 1})):
        assert sh_group(F).rank == 0
        for r, s in signatures(F.degree):
            rep = decide_lattice(F, SignatureTarget(r, s))
            if rep.c1.passed and rep.c2.passed:
                assert rep.verdict == REALIZABLE


def test_phi21_phi147_table():
    F = C({21: 1, 147: 1})
    eng = engine(F)
    for r, s in signatures(96):
        want = NOT_REALIZABLE if s in (0, 96) else REALIZABLE
        assert eng.lattice(SignatureTarget(r, s)).verdict == want


def test_salem_sextic_cases(salem6_char):
    assert decide_lattice(salem6_char, SignatureTarget(5, 5)).rule == "two-factor"
    rep = decide_lattice(salem6_char, SignatureTarget(9, 1))
    assert rep.verdict == UNDETERMINED and rep.reason
    ext = decide_lattice(salem6_char, SignatureTarget(9, 1), extended=True)
    assert ext.verdict == NOT_REALIZABLE
    assert decide_lattice(salem6_char, SignatureTarget(1, 9), extended=True).verdict == NOT_REALIZABLE


@pytest.mark.parametrize("s", [3, 7, 11, 15, 19])
def test_salem_products_all_five(s, salem10_char, salem12_char):
    t = SignatureTarget(22 - s, s)
    assert decide_lattice(salem10_char, t).verdict == REALIZABLE
    rep = decide_lattice(salem12_char, t)
    assert rep.verdict == REALIZABLE and rep.rule == "class-split"
    assert sum(rep.split) == s


def test_verdict_independent_of_factor_order():
    facs = [cyc(21), cyc(147), cyc(15)]
    for r, s in signatures(96 + 8):
        verdicts = {
            decide_lattice(FactoredCharPoly(list(perm)), SignatureTarget(r, s)).verdict
            for perm in itertools.permutations(facs)
        }
        assert len(verdicts) == 1


def _profiles(F, s):
    eng = engine(F)
    total = (s - eng.m) // 2
    for x in itertools.product(*(range(c + 1) for c in eng.caps)):
        if sum(x) == total:
            yield MilnorProfile(x)


@pytest.mark.parametrize("spec", [{21: 1, 147: 1}, {15: 1, 21: 1}, {7: 2, 14: 2}, {15: 1, 30: 1}])
def test_milnor_agrees_with_lattice(spec):
    F = C(spec)
    eng = engine(F)
    for r, s in signatures(F.degree):
        t = SignatureTarget(r, s)
        lat = eng.lattice(t).verdict
        if not (eng.c1.passed and not eng.c2(t).failures):
            continue
        some = any(eng.milnor(t, p).verdict == REALIZABLE for p in _profiles(F, s))
        assert some == (lat == REALIZABLE), (spec, r, s)


def test_milnor_profiles_phi21_phi147():
    F = C({21: 1, 147: 1})
    t = SignatureTarget(92, 4)
    assert decide_milnor(F, t, MilnorProfile([1, 1])).verdict == REALIZABLE
    assert decide_milnor(F, t, MilnorProfile([0, 2])).verdict == NOT_REALIZABLE
    assert decide_milnor(F, t, MilnorProfile([2, 0])).verdict == NOT_REALIZABLE
    with pytest.raises(BadInput):
        decide_milnor(F, t, MilnorProfile([1, 2]))
    with pytest.raises(BadInput):
        decide_milnor(F, t, MilnorProfile([13, 0]))


def test_milnor_sh_trivial_any_profile(salem10_char):
    t = SignatureTarget(15, 7)
    # s = 7 = m + 2 * 3: three negative pairs to place, f1 holds at most 4.
    for n1 in range(4):
        rep = decide_milnor(salem10_char, t, MilnorProfile([n1, 3 - n1]))
        assert rep.verdict == REALIZABLE


def test_unresolved_downgrades_to_undetermined():
    big = (10**12 + 39) * (10**12 + 61)
    F = FactoredCharPoly([(IntPoly([1, 3, 1]), 1), (IntPoly([1, 3 - big, 1]), 1)])
    eng = engine(F, trial_limit=10, rho_rounds=0)
    rep = eng.sh_or_unresolved(SignatureTarget(2, 2))
    assert rep.verdict == UNDETERMINED and rep.rule == "unresolved"
    assert str(big) in rep.reason


def test_extended_mode_never_contradicts_constructive_rules(salem10_char, salem12_char, salem6_char):
    for F in (salem10_char, salem12_char, salem6_char):
        for r, s in signatures(F.degree):
            t = SignatureTarget(r, s)
            plain = decide_lattice(F, t).verdict
            ext = decide_lattice(F, t, extended=True).verdict
            if plain != UNDETERMINED:
                assert plain == ext
