"""Integer helpers: primality, factoring, Legendre symbols, orders."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import BadInput, NotOddPrime

DEFAULT_TRIAL_LIMIT = 10**6
DEFAULT_RHO_ROUNDS = 200_000

# Deterministic Miller-Rabin bases, valid below 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4)
def primes_up_to(limit: int) -> tuple[int, ...]:
    if limit < 2:
        return ()
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, v in enumerate(sieve) if v)


def _rho(n: int, rounds: int, seed: int) -> int | None:
    """Brent's variant of Pollard rho; returns a proper factor or None."""
    y, c, m = seed % n, (seed * 7 + 1) % n or 1, 128
    g, r, q = 1, 1, 1
    spent = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        spent += r
        if spent > rounds:
            return None
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


@dataclass
class IntegerFactorization:
    primes: dict[int, int] = field(default_factory=dict)
    unresolved: list[int] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.unresolved


def factor_integer(
    n: int,
    trial_limit: int = DEFAULT_TRIAL_LIMIT,
    rho_rounds: int = DEFAULT_RHO_ROUNDS,
) -> IntegerFactorization:
    """Factor |n| by trial division, then Pollard rho on what is left.

    Composite cofactors that rho cannot split within the budget are
    reported in ``unresolved`` instead of being guessed at.
    """
    n = abs(n)
    out = IntegerFactorization()
    if n < 2:
        return out
    for q in primes_up_to(trial_limit):
        if q * q > n:
            break
        while n % q == 0:
            out.primes[q] = out.primes.get(q, 0) + 1
            n //= q
    stack = [n] if n > 1 else []
    while stack:
        c = stack.pop()
        if c <= trial_limit * trial_limit or is_prime(c):
            # Anything below trial_limit**2 without small factors is prime.
            out.primes[c] = out.primes.get(c, 0) + 1
            continue
        r = math.isqrt(c)
        if r * r == c:
            stack += [r, r]
            continue
        d = None
        for seed in range(2, 6):
            d = _rho(c, rho_rounds, seed)
            if d:
                break
        if d is None:
            out.unresolved.append(c)
        else:
            stack += [d, c // d]
    out.primes = dict(sorted(out.primes.items()))
    out.unresolved.sort()
    return out


def legendre(a: int, p: int) -> int:
    if p < 3 or not is_prime(p):
        raise NotOddPrime(f"{p} is not an odd prime")
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def multiplicative_order(a: int, m: int) -> int:
    if m < 2 or math.gcd(a, m) != 1:
        raise BadInput(f"{a} is not a unit mod {m}")
    k, x = 1, a % m
    while x != 1 % m:
        x = x * a % m
        k += 1
    return k


def subgroup_contains_minus_one(m: int, p: int) -> bool:
    """Whether -1 lies in the subgroup of (Z/m)^x generated by p."""
    if m < 3 or m % 2 == 0 or p < 3 or not is_prime(p) or m % p == 0:
        raise BadInput(f"need odd m >= 3 and an odd prime p not dividing m, got m={m}, p={p}")
    x = p % m
    while x != 1:
        if x == m - 1:
            return True
        x = x * p % m
    return False


def euler_phi(m: int) -> int:
    out = m
    for q in factor_integer(m).primes:
        out = out // q * (q - 1)
    return out


def divisors(m: int) -> list[int]:
    out = [1]
    for q, e in factor_integer(m).primes.items():
        out = [d * q**k for d in out for k in range(e + 1)]
    return sorted(out)


def prime_power_base(n: int) -> int | None:
    """Return q if n = q^k with q prime and k >= 1, else None."""
    f = factor_integer(n).primes
    return next(iter(f)) if len(f) == 1 else None
