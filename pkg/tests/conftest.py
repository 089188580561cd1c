from fractions import Fraction

import pytest

from isolat.intpoly import IntPoly, cyclotomic
from isolat.obstruction import Factor, FactoredCharPoly

SALEM10 = IntPoly([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
SALEM12 = IntPoly([1, -1, 1, -1, 0, 0, -1, 0, 0, -1, 1, -1, 1])
SALEM6 = IntPoly([1, -3, -1, 5, -1, -3, 1])


def cyc(m, n=1):
    return Factor(cyclotomic(m), n, m)


def sylvester_resultant(f: IntPoly, g: IntPoly) -> int:
    """Determinant of the Sylvester matrix by fraction-free elimination."""
    m, n = f.degree, g.degree
    size = m + n
    fa, ga = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    rows = []
    for i in range(n):
        rows.append([0] * i + fa + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + ga + [0] * (size - n - 1 - i))
    a = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if a[r][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, size):
            if a[r][c]:
                k = a[r][c] / a[c][c]
                a[r] = [x - k * y for x, y in zip(a[r], a[c])]
    assert det.denominator == 1
    return int(det)


@pytest.fixture
def salem10_char():
    return FactoredCharPoly([Factor(SALEM10, 1), cyc(14, 2)])


@pytest.fixture
def salem12_char():
    return FactoredCharPoly([Factor(SALEM12, 1), cyc(14), cyc(12)])


@pytest.fixture
def salem6_char():
    return FactoredCharPoly([Factor(SALEM6, 1), cyc(12)])
