import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import SALEM10, SALEM12, sylvester_resultant
from isolat.errors import BadInput, ZeroConstantTerm, ZeroPolynomial
from isolat.intpoly import (
    IntPoly,
    content,
    cyclotomic,
    derivative,
    divexact,
    evaluate,
    gcd,
    is_perfect_square,
    is_symmetric,
    prem,
    primitive_part,
    reciprocal,
    resultant,
    squarefree_check,
    to_text,
)

X = sympy.Symbol("x")

coeff_lists = st.lists(st.integers(-20, 20), min_size=1, max_size=9).filter(lambda c: c[-1] != 0)


def to_sympy(p: IntPoly):
    return sympy.Poly(list(reversed(p.coeffs)) or [0], X)


def test_trailing_zeros_trimmed_and_degree():
    assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPoly().degree == -1
    assert IntPoly([5]).degree == 0


def test_arithmetic_small():
    x = IntPoly.x()
    assert (x + 1) * (x - 1) == x**2 - 1
    assert (x + 1) ** 3 == IntPoly([1, 3, 3, 1])
    assert IntPoly([1, 1]).shift(2) == IntPoly([0, 0, 1, 1])
    assert IntPoly([1, 1]).substitute_power(3) == IntPoly([1, 0, 0, 1])
    assert IntPoly([1, 2, 3]).negate_variable() == IntPoly([1, -2, 3])


@given(coeff_lists, coeff_lists)
@settings(max_examples=60, deadline=None)
def test_mul_matches_sympy(a, b):
    p, q = IntPoly(a), IntPoly(b)
    assert to_sympy(p * q) == to_sympy(p) * to_sympy(q)


def test_evaluate_and_derivative():
    f = IntPoly([1, -3, 1])
    assert evaluate(f, 1) == -1
    assert evaluate(f, -1) == 5
    assert derivative(f) == IntPoly([-3, 2])


def test_content_primitive_reciprocal_symmetric():
    assert content(IntPoly([4, -6, 8])) == 2
    assert primitive_part(IntPoly([-4, 6, -8])) == IntPoly([2, -3, 4])
    assert reciprocal(IntPoly([1, 2, 3])) == IntPoly([3, 2, 1])
    with pytest.raises(ZeroConstantTerm):
        reciprocal(IntPoly([0, 1]))
    assert is_symmetric(IntPoly([1, 7, 1]))
    assert not is_symmetric(IntPoly([1, 1]))  # odd degree
    assert not is_symmetric(IntPoly([1, -3, -1, 2]))


def test_prem_identity():
    a, b = IntPoly([1, 2, 3, 4, 5]), IntPoly([3, 0, 2])
    r = prem(a, b)
    # lead(b)^(deg a - deg b + 1) * a - r is divisible by b.
    lhs = a * (b.lead ** (a.degree - b.degree + 1)) - r
    divexact(lhs, b)
    assert r.degree < b.degree


def test_divexact_errors():
    with pytest.raises(BadInput):
        divexact(IntPoly([1, 0, 1]), IntPoly([1, 1]))
    with pytest.raises(ZeroPolynomial):
        divexact(IntPoly([1]), IntPoly())


def test_gcd():
    x = IntPoly.x()
    a = (x - 1) * (x + 2) * (x**2 + 1)
    b = (x + 2) * (x**2 + 1) * (x + 5)
    assert gcd(a, b) == (x + 2) * (x**2 + 1)
    assert gcd(IntPoly([1, 1]), IntPoly([2, 1])) == IntPoly([1])


@pytest.mark.parametrize(
    "f, m, value",
    [(SALEM10, 14, 169), (SALEM12, 14, 49), (SALEM12, 12, 169)],
)
def test_known_resultants(f, m, value):
    assert resultant(f, cyclotomic(m)) == value
    assert sylvester_resultant(f, cyclotomic(m)) == value


@given(coeff_lists, coeff_lists)
@settings(max_examples=80, deadline=None)
def test_resultant_matches_sylvester(a, b):
    p, q = IntPoly(a), IntPoly(b)
    if p.degree == 0 and q.degree == 0:
        return
    assert resultant(p, q) == sylvester_resultant(p, q)


def test_resultant_symmetry_sign():
    p, q = IntPoly([1, 2, 0, 1]), IntPoly([3, 0, 1, 0, 1])
    assert resultant(q, p) == (-1) ** (p.degree * q.degree) * resultant(p, q)


def test_cyclotomic_resultants_prime_power_ratio():
    assert resultant(cyclotomic(21), cyclotomic(147)) == 7**12
    assert resultant(cyclotomic(15), cyclotomic(21)) == 1


def test_cyclotomic_against_sympy():
    for m in range(1, 120):
        assert to_sympy(cyclotomic(m)) == sympy.Poly(sympy.cyclotomic_poly(m, X), X)


def test_cyclotomic_product_identity():
    for m in range(1, 201):
        prod = IntPoly.const(1)
        for d in sympy.divisors(m):
            prod = prod * cyclotomic(d)
        assert prod == IntPoly.monomial(m) - 1


def test_large_cyclotomic_structure():
    f = cyclotomic(9317)
    assert f.degree == 7260
    assert f == cyclotomic(77).substitute_power(121)
    assert cyclotomic(147) == cyclotomic(21).substitute_power(7)


def test_squares_and_squarefree():
    assert is_perfect_square(169)
    assert not is_perfect_square(-1)
    assert squarefree_check(cyclotomic(12))
    assert not squarefree_check(cyclotomic(12) ** 2)


@pytest.mark.parametrize(
    "p, text",
    [(IntPoly([1, 7, 1]), "x^2 + 7*x + 1"), (IntPoly([-1]), "-1"), (IntPoly([0, -2]), "-2*x"), (IntPoly(), "0")],
)
def test_to_text(p, text):
    assert to_text(p) == text
