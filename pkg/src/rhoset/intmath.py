"""Elementary integer number theory.

Factorization is budgeted: trial division by the primes below 10**6, then
Brent's variant of Pollard rho with a seeded generator, with Miller-Rabin
as the primality oracle.  When the iteration budget runs out the result is
returned with ``complete=False`` instead of raising.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod

TRIAL_BOUND = 10**6
MR_ROUNDS = 40
DEFAULT_BUDGET = 2_000_000
DEFAULT_SEED = 20240229


@lru_cache(maxsize=1)
def small_primes(limit: int = TRIAL_BOUND) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


_FEW_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_probable_prime(n: int, rounds: int = MR_ROUNDS, seed: int = DEFAULT_SEED) -> bool:
    """Miller-Rabin with ``rounds`` seeded random bases."""
    if n < 2:
        return False
    for p in _FEW_PRIMES:
        if n % p == 0:
            return n == p
    if n < 53 * 53:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    rng = random.Random(seed ^ n)
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FactoredInt:
    value: int
    factors: tuple[tuple[int, int], ...]
    complete: bool

    @property
    def cofactor(self) -> int:
        """Part of ``value`` not covered by ``factors`` (1 when complete)."""
        return self.value // prod(p**e for p, e in self.factors)

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)


class _Budget:
    def __init__(self, iterations: int):
        self.left = iterations

    def spend(self, k: int) -> bool:
        self.left -= k
        return self.left >= 0


def _brent_rho(n: int, c: int, x0: int, budget: _Budget, batch: int = 128) -> int | None:
    """Return a nontrivial factor of composite odd ``n``, ``n`` itself on a
    degenerate cycle, or None when the budget is spent."""
    y, r, q = x0, 1, 1
    g = 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            m = min(batch, r - k)
            if not budget.spend(m):
                return None
            for _ in range(m):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
    if g == n:
        # batch overshot; replay one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def _split(n: int, budget: _Budget, rng: random.Random) -> int | None:
    while True:
        c = rng.randrange(1, n - 1)
        x0 = rng.randrange(0, n)
        g = _brent_rho(n, c, x0, budget)
        if g is None:
            return None
        if g != n:
            return g


@lru_cache(maxsize=4096)
def factorize(n: int, budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED) -> FactoredInt:
    """Factor ``n >= 1`` within ``budget`` rho iterations.

    >>> factorize(987).factors
    ((3, 1), (7, 1), (47, 1))
    """
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    found: dict[int, int] = {}
    rest = n
    for p in small_primes():
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            found[p] = e
    if rest == 1:
        return FactoredInt(n, tuple(sorted(found.items())), True)
    if rest < TRIAL_BOUND * TRIAL_BOUND or is_probable_prime(rest, seed=seed):
        found[rest] = found.get(rest, 0) + 1
        return FactoredInt(n, tuple(sorted(found.items())), True)

    rng = random.Random(seed)
    pool = _Budget(budget)
    stack = [rest]
    unresolved = 1
    while stack:
        q = stack.pop()
        if q == 1:
            continue
        if is_probable_prime(q, seed=seed):
            found[q] = found.get(q, 0) + 1
            continue
        r = isqrt(q)
        if r * r == q:
            stack += [r, r]
            continue
        g = _split(q, pool, rng)
        if g is None:
            unresolved *= q
            continue
        stack += [g, q // g]
    return FactoredInt(n, tuple(sorted(found.items())), unresolved == 1)


def divisors(n: int) -> list[int]:
    ds = [1]
    for p, e in factorize(n).factors:
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius needs n >= 1")
    f = factorize(n)
    if any(e > 1 for _, e in f.factors):
        return 0
    return -1 if len(f.factors) % 2 else 1


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("euler_phi needs n >= 1")
    result = n
    for p, _ in factorize(n).factors:
        result -= result // p
    return result


def legendre(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion."""
    if p < 3 or p % 2 == 0 or not is_probable_prime(p):
        raise ValueError(f"legendre needs an odd prime, got {p}")
    t = pow(a % p, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def p_adic_val(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0 is undefined")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def p_prime_excl3(n: int) -> int:
    """Greatest prime factor of n / gcd(n, 3)."""
    if n < 4:
        raise ValueError("P'(n) is defined for n >= 4")
    q = n // gcd(n, 3)
    if q == 1:
        raise ValueError(f"n / gcd(n, 3) = 1 for n = {n}")
    return factorize(q).factors[-1][0]


def sqrt_mod_prime(a: int, p: int) -> int:
    """Tonelli-Shanks; ``a`` must be a square mod the odd prime ``p``."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        raise ValueError(f"{a} is not a square modulo {p}")
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    """The x in [0, m1*m2) with x = r1 mod m1 and x = r2 mod m2 (coprime moduli)."""
    if gcd(m1, m2) != 1:
        raise ValueError(f"moduli {m1} and {m2} are not coprime")
    if m2 == 1:
        return r1 % m1
    t = (r2 - r1) * pow(m1, -1, m2) % m2
    return (r1 + m1 * t) % (m1 * m2)
