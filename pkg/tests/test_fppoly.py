import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import SALEM10, SALEM12
from isolat.arith import legendre, subgroup_contains_minus_one
from isolat.errors import ModulusMismatch, NotPrime, ZeroConstantTerm
from isolat.fppoly import (
    FpPoly,
    count_symmetric_irreducible_factors,
    distinct_degree_factorization,
    factor_mod,
    gcd_mod,
    has_common_symmetric_factor,
    has_symmetric_irreducible_factor,
    is_irreducible,
    is_self_reciprocal,
    reduce_mod,
    squarefree_decomposition,
    symmetric_irreducible_factors,
)
from isolat.intpoly import IntPoly, cyclotomic

X = sympy.Symbol("x")
SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 101]


def test_constructor_reduces_and_validates():
    assert FpPoly([7, 8, 0], 7).coeffs == (0, 1)
    with pytest.raises(NotPrime):
        FpPoly([1], 9)
    with pytest.raises(ModulusMismatch):
        FpPoly([1], 3) + FpPoly([1], 5)


def test_divmod_and_gcd():
    f = FpPoly([1, 0, 1], 5)  # (x + 2)(x + 3)
    g = FpPoly([2, 1], 5)
    q, r = divmod(f, g)
    assert r.is_zero() and q == FpPoly([3, 1], 5)
    assert gcd_mod(f, FpPoly([3, 1], 5) * FpPoly([1, 1], 5)) == FpPoly([3, 1], 5)


@given(
    st.sampled_from(SMALL_PRIMES),
    st.lists(st.integers(0, 200), min_size=2, max_size=25),
)
@settings(max_examples=120, deadline=None)
def test_factor_mod_reconstructs(p, coeffs):
    f = FpPoly(coeffs, p)
    if f.degree < 1:
        return
    fac = factor_mod(f)
    assert fac.expand() == f
    for g, e in fac.factors:
        assert g.lead == 1 and e >= 1 and is_irreducible(g)


def test_factor_mod_with_repeated_factors_and_pth_powers():
    p = 3
    a, b = FpPoly([1, 1], p), FpPoly([1, 0, 1], p)
    f = a**3 * b**2 * FpPoly([1, 2, 0, 1], p)
    assert factor_mod(f).expand() == f
    sq = squarefree_decomposition(f)
    assert any(e == 3 for _, e in sq)


def test_factor_mod_matches_sympy_on_random_inputs():
    rng = random.Random(5)
    for _ in range(25):
        p = rng.choice([3, 5, 7, 13])
        coeffs = [rng.randrange(p) for _ in range(rng.randint(3, 14))] + [1]
        f = FpPoly(coeffs, p)
        ours = sorted((g.coeffs, e) for g, e in factor_mod(f).factors)
        _, theirs = sympy.factor_list(sympy.Poly(list(reversed(coeffs)), X, modulus=p))
        ref = sorted(
            (tuple(int(c) % p for c in reversed(q.all_coeffs())), e) for q, e in theirs
        )
        assert ours == ref


def test_distinct_degree_blocks_multiply_back():
    f = reduce_mod(cyclotomic(21) * cyclotomic(5), 2)
    blocks = distinct_degree_factorization(f)
    prod = FpPoly([1], 2)
    for g, _ in blocks:
        prod = prod * g
    assert prod == f.monic()


def test_is_irreducible():
    assert is_irreducible(FpPoly([1, 1, 1], 2))
    assert not is_irreducible(FpPoly([1, 0, 1], 2))
    assert is_irreducible(FpPoly([1, 1, 0, 0, 1], 2))


def test_salem_pair_mod_13_shares_a_symmetric_quadratic():
    a, b = reduce_mod(SALEM10, 13), reduce_mod(cyclotomic(14), 13)
    common = gcd_mod(a, b)
    texts = [g.to_text() for g in symmetric_irreducible_factors(common)]
    assert "x^2 + 7*x + 1" in texts
    assert has_common_symmetric_factor(SALEM10, cyclotomic(14), 13)


def test_salem_dodecic_common_factors():
    common7 = gcd_mod(reduce_mod(SALEM12, 7), reduce_mod(cyclotomic(14), 7))
    assert "x + 1" in [g.to_text() for g in symmetric_irreducible_factors(common7)]
    common13 = gcd_mod(reduce_mod(SALEM12, 13), reduce_mod(cyclotomic(12), 13))
    lin = [g.to_text() for g, _ in factor_mod(common13).factors]
    assert lin == ["x + 2", "x + 7"]
    # x + 2 and x + 7 are swapped by reciprocity: neither is self-reciprocal.
    assert symmetric_irreducible_factors(common13) == []
    assert not has_common_symmetric_factor(SALEM12, cyclotomic(12), 13)


def test_self_reciprocal():
    assert is_self_reciprocal(FpPoly([1, 7, 1], 13))
    assert is_self_reciprocal(FpPoly([1, 1], 13))
    assert not is_self_reciprocal(FpPoly([2, 1], 13))
    assert not is_self_reciprocal(FpPoly([0, 1], 13))


def test_symmetric_factor_helpers_agree_with_full_factorization():
    rng = random.Random(11)
    for _ in range(40):
        p = rng.choice([3, 5, 7, 11])
        n = rng.randint(1, 6)
        half = [rng.randrange(p) for _ in range(n)]
        coeffs = [1] + half[1:] + [rng.randrange(p)] + list(reversed(half[1:])) + [1]
        f = FpPoly(coeffs, p)
        if f.degree < 1:
            continue
        brute = {g for g, _ in factor_mod(f).factors if is_self_reciprocal(g)}
        assert set(symmetric_irreducible_factors(f)) == brute
        assert count_symmetric_irreducible_factors(f) == len(brute)
        assert has_symmetric_irreducible_factor(f) == bool(brute)
        nonlin = {g for g in brute if g.degree > 1}
        assert set(symmetric_irreducible_factors(f, include_linear=False)) == nonlin
        assert has_symmetric_irreducible_factor(f, include_linear=False) == bool(nonlin)


def test_symmetric_search_needs_nonzero_constant():
    with pytest.raises(ZeroConstantTerm):
        symmetric_irreducible_factors(FpPoly([0, 1], 5))


def test_cyclotomic_mod_p_symmetric_iff_minus_one_in_subgroup():
    # m odd <= 200, p odd <= 50, p not dividing m.
    for m in range(3, 201, 2):
        f = cyclotomic(m)
        for p in sympy.primerange(3, 50):
            if m % p == 0:
                continue
            direct = has_symmetric_irreducible_factor(reduce_mod(f, p))
            assert direct == subgroup_contains_minus_one(m, p), (m, p)


def test_prime_conductor_three_mod_four_uses_legendre():
    for q in sympy.primerange(3, 101):
        if q % 4 != 3:
            continue
        f = cyclotomic(q)
        for p in sympy.primerange(2, 60):
            if p == q:
                continue
            direct = has_symmetric_irreducible_factor(reduce_mod(f, p))
            assert direct == (legendre(p, q) == -1), (q, p)
