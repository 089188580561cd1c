"""Polynomials over prime fields and their factorization.

Factorization is the usual pipeline: squarefree decomposition, then
distinct-degree, then equal-degree splitting (Cantor-Zassenhaus for odd
p, the trace map for p = 2).  The inner loops run on numpy arrays; for
primes too large for int64 products the arrays hold Python ints.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .arith import is_prime, legendre, subgroup_contains_minus_one
from .errors import ModulusMismatch, NotPrime, ZeroConstantTerm, ZeroPolynomial
from .intpoly import IntPoly

__all__ = [
    "FpPoly",
    "FpFactorization",
    "reduce_mod",
    "gcd_mod",
    "factor_mod",
    "squarefree_decomposition",
    "distinct_degree_factorization",
    "is_irreducible",
    "is_self_reciprocal",
    "symmetric_irreducible_factors",
    "has_symmetric_irreducible_factor",
    "count_symmetric_irreducible_factors",
    "has_common_symmetric_factor",
    "subgroup_contains_minus_one",
    "legendre",
]


@lru_cache(maxsize=1024)
def _check_prime(p: int) -> int:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return p


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


class FpPoly:
    """Immutable polynomial over F_p with ascending residues in [0, p)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs: Iterable[int], p: int):
        _check_prime(p)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(_trim([int(c) % p for c in coeffs])))

    @classmethod
    def _raw(cls, coeffs: Sequence[int], p: int) -> FpPoly:
        # Trusted constructor: coefficients already reduced and trimmed.
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "coeffs", tuple(int(c) for c in coeffs))
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("FpPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def __eq__(self, other) -> bool:
        return isinstance(other, FpPoly) and self.p == other.p and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("FpPoly", self.p, self.coeffs))

    def sort_key(self) -> tuple:
        return (self.degree, self.coeffs)

    def __lt__(self, other: FpPoly) -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        return f"FpPoly({list(self.coeffs)}, p={self.p})"

    def _same(self, other: FpPoly) -> None:
        if self.p != other.p:
            raise ModulusMismatch(f"moduli {self.p} and {other.p} differ")

    def __add__(self, other: FpPoly) -> FpPoly:
        self._same(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        p = self.p
        c = [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)]
        return FpPoly._raw(_trim(c), p)

    def __neg__(self) -> FpPoly:
        return FpPoly._raw([(-c) % self.p for c in self.coeffs], self.p)

    def __sub__(self, other: FpPoly) -> FpPoly:
        return self + (-other)

    def __mul__(self, other) -> FpPoly:
        if isinstance(other, int):
            return FpPoly([c * other for c in self.coeffs], self.p)
        self._same(other)
        return FpPoly._raw(_mul(list(self.coeffs), list(other.coeffs), self.p), self.p)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> FpPoly:
        out = FpPoly._raw([1], self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other: FpPoly) -> tuple[FpPoly, FpPoly]:
        self._same(other)
        q, r = _divmod(list(self.coeffs), list(other.coeffs), self.p)
        return FpPoly._raw(q, self.p), FpPoly._raw(r, self.p)

    def __floordiv__(self, other: FpPoly) -> FpPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: FpPoly) -> FpPoly:
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def monic(self) -> FpPoly:
        if not self.coeffs:
            return self
        inv = pow(self.lead, -1, self.p)
        return FpPoly._raw([c * inv % self.p for c in self.coeffs], self.p)

    def derivative(self) -> FpPoly:
        p = self.p
        return FpPoly._raw(_trim([i * c % p for i, c in enumerate(self.coeffs)][1:]), p)

    def reciprocal_monic(self) -> FpPoly:
        """Monic normalisation of X^deg * f(1/X); needs f(0) != 0."""
        if not self.coeffs or self.coeffs[0] == 0:
            raise ZeroConstantTerm("reciprocal needs a nonzero constant term")
        return FpPoly._raw(self.coeffs[::-1], self.p).monic()

    def to_text(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                terms.append(str(c))
            else:
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)


@dataclass(frozen=True)
class FpFactorization:
    p: int
    unit: int
    factors: tuple[tuple[FpPoly, int], ...]

    def expand(self) -> FpPoly:
        out = FpPoly._raw([self.unit], self.p) if self.unit else FpPoly._raw([], self.p)
        for g, e in self.factors:
            out = out * g**e
        return out


# ---------------------------------------------------------------- kernels


def _dtype(p: int, n: int):
    return np.int64 if (p - 1) ** 2 * (n + 2) < 2**62 else object


def _mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    if len(a) * len(b) < 400:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return _trim([c % p for c in out])
    dt = _dtype(p, min(len(a), len(b)))
    c = np.convolve(np.array(a, dtype=dt), np.array(b, dtype=dt)) % p
    return _trim([int(x) for x in c])


def _divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroPolynomial("division by the zero polynomial")
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], list(a)
    inv = pow(b[-1], -1, p)
    if db == 0:
        return [c * inv % p for c in a], []
    dt = _dtype(p, 1)
    r = np.array(a, dtype=dt)
    bb = np.array(b, dtype=dt)
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        t = int(r[k]) * inv % p
        if t:
            q[k - db] = t
            seg = r[k - db : k + 1]
            seg -= t * bb
            seg %= p
    return q, _trim([int(x) for x in r[:db]])


def _rem(a: list[int], b: list[int], p: int) -> list[int]:
    return _divmod(a, b, p)[1]


def _monic(a: list[int], p: int) -> list[int]:
    if not a or a[-1] == 1:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _rem(a, b, p)
    return _monic(a, p)


class _Ring:
    """Arithmetic in F_p[X]/(f) for monic f of degree n >= 1."""

    def __init__(self, f: list[int], p: int):
        self.p = p
        self.f = f
        self.n = n = len(f) - 1
        self.dt = dt = _dtype(p, n)
        red = np.zeros((max(n - 1, 0), n), dtype=dt)
        cur = np.array([(-c) % p for c in f[:n]], dtype=dt)  # X^n mod f
        neg_f = cur.copy()
        for k in range(n - 1):
            red[k] = cur
            top = cur[-1]
            cur = np.concatenate((np.zeros(1, dtype=dt), cur[:-1]))
            if top:
                cur = (cur + top * neg_f) % p
        self.red = red
        # Integer matmul in numpy skips BLAS; float64 is exact while every
        # dot product stays below 2^53, and much faster.
        self.exact_float = (p - 1) ** 2 * (n + 1) < 2**52
        self.red_f = red.astype(np.float64) if self.exact_float else None
        self._frob: np.ndarray | None = None
        self._frob_f: np.ndarray | None = None

    def elem(self, c: Sequence[int]) -> np.ndarray:
        out = np.zeros(self.n, dtype=self.dt)
        c = _rem(list(c), self.f, self.p) if len(c) > self.n else list(c)
        out[: len(c)] = c
        return out

    def x(self) -> np.ndarray:
        return self.elem([0, 1] if self.n > 1 else _rem([0, 1], self.f, self.p))

    def one(self) -> np.ndarray:
        return self.elem([1])

    def reduce(self, c: np.ndarray) -> np.ndarray:
        n, p = self.n, self.p
        if len(c) <= n:
            out = np.zeros(n, dtype=self.dt)
            out[: len(c)] = c
            return out % p
        low = c[:n] % p
        high = c[n:] % p
        if self.exact_float:
            folded = (high.astype(np.float64) @ self.red_f[: len(high)]).astype(self.dt)
            return (low + folded % p) % p
        return (low + high @ self.red[: len(high)]) % p

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(np.convolve(a, b) % self.p)

    def shift(self, a: np.ndarray, k: int) -> np.ndarray:
        """a * X^k for 0 <= k < n."""
        return self.reduce(np.concatenate((np.zeros(k, dtype=a.dtype), a)))

    def pow(self, a: np.ndarray, e: int) -> np.ndarray:
        out = self.one()
        while e:
            if e & 1:
                out = self.mul(out, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return out

    @property
    def frob(self) -> np.ndarray:
        """Matrix whose row i is X^(i p) mod f, so that a^p = a @ frob."""
        if self._frob is None:
            n = self.n
            rows = np.zeros((n, n), dtype=self.dt)
            cur = self.one()
            if self.p < n:
                for i in range(n):
                    rows[i] = cur
                    cur = self.shift(cur, self.p)
            else:
                xp = self.pow(self.x(), self.p)
                for i in range(n):
                    rows[i] = cur
                    cur = self.mul(cur, xp)
            self._frob = rows
            if self.exact_float:
                self._frob_f = rows.astype(np.float64)
        return self._frob

    def frobenius(self, a: np.ndarray) -> np.ndarray:
        frob = self.frob
        if self.exact_float:
            return (a.astype(np.float64) @ self._frob_f).astype(self.dt) % self.p
        return (a @ frob) % self.p

    @staticmethod
    def to_list(a: np.ndarray) -> list[int]:
        return _trim([int(x) for x in a])


# ---------------------------------------------------------------- public API


def reduce_mod(f: IntPoly, prime: int) -> FpPoly:
    return FpPoly(f.coeffs, prime)


def gcd_mod(a: FpPoly, b: FpPoly) -> FpPoly:
    a._same(b)
    return FpPoly._raw(_gcd(list(a.coeffs), list(b.coeffs), a.p), a.p)


def _pth_root(c: list[int], p: int) -> list[int]:
    return c[::p]


def _sqf(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Squarefree decomposition of a monic polynomial."""
    out: list[tuple[list[int], int]] = []
    df = _trim([i * c % p for i, c in enumerate(f)][1:])
    c = _gcd(f, df, p) if df else list(f)
    w = _divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = _gcd(w, c, p)
        fac = _divmod(w, y, p)[0]
        if len(fac) > 1:
            out.append((fac, i))
        w = y
        c = _divmod(c, y, p)[0]
        i += 1
    if len(c) > 1:
        for g, e in _sqf(_pth_root(c, p), p):
            out.append((g, e * p))
    return out


def squarefree_decomposition(f: FpPoly) -> list[tuple[FpPoly, int]]:
    """Pairwise coprime squarefree parts with their multiplicities."""
    if f.is_zero():
        raise ZeroPolynomial("squarefree decomposition of zero")
    parts = _sqf(list(f.monic().coeffs), f.p)
    return sorted(((FpPoly._raw(g, f.p), e) for g, e in parts), key=lambda t: t[1])


def _ddf(f: list[int], p: int) -> list[tuple[list[int], int]]:
    """Distinct-degree factorization of a monic squarefree polynomial."""
    out: list[tuple[list[int], int]] = []
    if len(f) <= 2:
        return [(f, 1)] if len(f) == 2 else []
    ring = _Ring(f, p)
    x = ring.x()
    h = x
    rest = f
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = ring.frobenius(h)
        diff = (h - x) % p
        g = _gcd(rest, _rem(ring.to_list(diff), rest, p), p)
        if len(g) > 1:
            out.append((g, d))
            rest = _divmod(rest, g, p)[0]
    if len(rest) > 1:
        out.append((rest, len(rest) - 1))
    return out


def distinct_degree_factorization(f: FpPoly) -> list[tuple[FpPoly, int]]:
    """For squarefree f: pairs (product of all irreducible factors of degree d, d)."""
    return [(FpPoly._raw(g, f.p), d) for g, d in _ddf(list(f.monic().coeffs), f.p)]


def _seed(f: list[int], p: int) -> random.Random:
    return random.Random(f"{p}:{','.join(map(str, f))}")


def _edf(f: list[int], d: int, p: int) -> list[list[int]]:
    """Split a monic squarefree product of degree-d irreducibles."""
    n = len(f) - 1
    if n == d:
        return [f]
    ring = _Ring(f, p)
    rng = _seed(f, p)
    while True:
        a = ring.elem([rng.randrange(p) for _ in range(n)])
        if p == 2:
            # Trace of a down to F_2: a + a^2 + ... + a^(2^(d-1)).
            t, s = a, a
            for _ in range(d - 1):
                t = ring.frobenius(t)
                s = (s + t) % 2
            cand = ring.to_list(s)
        else:
            # a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
            t, norm = a, a
            for _ in range(d - 1):
                t = ring.frobenius(t)
                norm = ring.mul(norm, t)
            b = ring.pow(norm, (p - 1) // 2)
            b[0] = (b[0] - 1) % p
            cand = ring.to_list(b)
        if not cand:
            continue
        g = _gcd(f, cand, p)
        if 1 < len(g) < len(f):
            left = _edf(g, d, p)
            right = _edf(_divmod(f, g, p)[0], d, p)
            return left + right


def is_irreducible(g: FpPoly) -> bool:
    """Rabin's test: X^(p^d) = X mod g, and no factor of degree d/q."""
    d = g.degree
    if d <= 0:
        return False
    if d == 1:
        return True
    p = g.p
    f = list(g.monic().coeffs)
    ring = _Ring(f, p)
    x = ring.x()
    powers = [x]
    h = x
    for _ in range(d):
        h = ring.frobenius(h)
        powers.append(h)
    if ring.to_list((powers[d] - x) % p):
        return False
    q = 2
    dd = d
    while dd > 1:
        if dd % q == 0:
            diff = ring.to_list((powers[d // q] - x) % p)
            if len(_gcd(f, diff, p)) > 1:
                return False
            while dd % q == 0:
                dd //= q
        q += 1
    return True


def factor_mod(f: FpPoly, verify: bool = True) -> FpFactorization:
    """Complete factorization into monic irreducibles, deterministically ordered."""
    if f.is_zero():
        raise ZeroPolynomial("factorization of the zero polynomial")
    p = f.p
    found: list[tuple[FpPoly, int]] = []
    for part, e in _sqf(list(f.monic().coeffs), p):
        for block, d in _ddf(part, p):
            for g in _edf(block, d, p):
                found.append((FpPoly._raw(g, p), e))
    found.sort(key=lambda t: (t[0].sort_key(), t[1]))
    if verify:
        for g, _ in found:
            if not is_irreducible(g):  # pragma: no cover - would be a bug
                raise AssertionError(f"factor {g} failed the irreducibility check")
    return FpFactorization(p=p, unit=f.lead, factors=tuple(found))


def is_self_reciprocal(g: FpPoly) -> bool:
    """g(0) != 0 and g equals the monic normalisation of its reciprocal."""
    if g.is_zero() or g.coeffs[0] == 0:
        return False
    return g.monic() == g.reciprocal_monic()


def _without_linear_symmetric(f: list[int], p: int) -> list[int]:
    # Strip every factor X - 1 and X + 1.
    for root in {1, p - 1}:
        lin = [(-root) % p, 1]
        while f and FpPoly._raw(f, p)(root) == 0:
            f = _divmod(f, lin, p)[0]
    return f


def symmetric_irreducible_factors(f: FpPoly, include_linear: bool = True) -> list[FpPoly]:
    """Distinct monic irreducible factors of f equal to their own reciprocal.

    The linear factors X - 1 and X + 1 are self-reciprocal; they are kept
    unless ``include_linear`` is false.
    """
    if f.is_zero() or f.coeffs[0] == 0:
        raise ZeroConstantTerm("symmetric factor search needs f(0) != 0")
    p = f.p
    out: list[FpPoly] = []
    for part, _ in _sqf(list(f.monic().coeffs), p):
        for block, d in _ddf(part, p):
            if d == 1:
                for root in sorted({1, p - 1}):
                    if FpPoly._raw(block, p)(root) == 0:
                        out.append(FpPoly._raw([(-root) % p, 1], p))
                continue
            if d % 2:
                continue
            sym = _symmetric_part(block, d, p)
            if len(sym) > 1:
                out.extend(FpPoly._raw(g, p) for g in _edf(sym, d, p))
    out = sorted(set(out), key=FpPoly.sort_key)
    if not include_linear:
        out = [g for g in out if g.degree > 1]
    return out


def _symmetric_part(block: list[int], d: int, p: int) -> list[int]:
    """Product of the self-reciprocal factors in an equal-degree block.

    An irreducible factor of even degree d = 2e is self-reciprocal exactly
    when its roots satisfy a^(p^e) = 1/a, i.e. it divides X^(p^e + 1) - 1.
    """
    ring = _Ring(block, p)
    h = ring.x()
    for _ in range(d // 2):
        h = ring.frobenius(h)
    t = ring.mul(h, ring.x())
    t[0] = (t[0] - 1) % p
    return _gcd(block, ring.to_list(t), p)


def count_symmetric_irreducible_factors(f: FpPoly, include_linear: bool = True) -> int:
    """Number of distinct self-reciprocal irreducible factors of f."""
    if f.is_zero() or f.coeffs[0] == 0:
        raise ZeroConstantTerm("symmetric factor search needs f(0) != 0")
    p = f.p
    count = 0
    for part, _ in _sqf(list(f.monic().coeffs), p):
        for block, d in _ddf(part, p):
            if d == 1:
                if include_linear:
                    blk = FpPoly._raw(block, p)
                    count += sum(1 for r in {1, p - 1} if blk(r) == 0)
            elif d % 2 == 0:
                count += (len(_symmetric_part(block, d, p)) - 1) // d
    return count


def has_symmetric_irreducible_factor(f: FpPoly, include_linear: bool = True) -> bool:
    """Existence test that skips distinct-degree splitting.

    Accumulates prod_e (X^(p^e + 1) - 1) mod f and takes one gcd; every
    self-reciprocal irreducible factor of degree 2e divides the e-th term.
    """
    if f.is_zero() or f.coeffs[0] == 0:
        raise ZeroConstantTerm("symmetric factor search needs f(0) != 0")
    p = f.p
    g = list(f.monic().coeffs)
    if include_linear and (f(1) == 0 or f(p - 1) == 0):
        return True
    g = _without_linear_symmetric(g, p)
    n = len(g) - 1
    if n < 2:
        return False
    ring = _Ring(g, p)
    x = ring.x()
    h = x
    acc = ring.one()
    for _ in range(n // 2):
        h = ring.frobenius(h)
        t = ring.shift(h, 1)
        t[0] = (t[0] - 1) % p
        acc = ring.mul(acc, t)
        if not acc.any():
            return True
    return len(_gcd(g, ring.to_list(acc), p)) > 1


def has_common_symmetric_factor(f: IntPoly, g: IntPoly, prime: int) -> bool:
    """Whether f and g mod prime share a self-reciprocal irreducible factor.

    X - 1 and X + 1 count here.
    """
    a, b = reduce_mod(f, prime), reduce_mod(g, prime)
    common = gcd_mod(a, b)
    if common.degree < 1:
        return False
    return has_symmetric_irreducible_factor(common, include_linear=True)
