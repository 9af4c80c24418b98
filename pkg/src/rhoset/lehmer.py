"""The Lehmer sequence attached to gamma = alpha, delta = -beta.

With these roots gamma*delta = 1, gamma - delta = a1 and (gamma + delta)**2 = D.
Primitive divisors are read off the cyclotomic numbers phi_n, which are far
smaller than the terms themselves.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .errors import BudgetExceeded
from .intmath import (
    DEFAULT_BUDGET,
    DEFAULT_SEED,
    divisors,
    factorize,
    moebius,
    p_adic_val,
    p_prime_excl3,
)
from .quadring import QuadInt, RingParams, _params

ODD_EXCEPTIONS = {1: frozenset({3, 6, 10, 12}), 3: frozenset({3})}
HIGH_EXCEPTIONS = {
    1: frozenset({3, 4, 6, 8, 10, 12, 14, 18, 24}),
    2: frozenset({4, 6, 12}),
    3: frozenset({3, 6}),
}


def gamma_delta(params: RingParams) -> tuple[QuadInt, QuadInt]:
    return params.alpha, -params.beta


@lru_cache(maxsize=None)
def _lehmer(a1: int, n: int) -> int:
    params = RingParams(a1)
    g, d = gamma_delta(params)
    diff = g**n - d**n
    if n % 2:
        # gamma - delta = a1
        if diff.y != 0:
            raise ArithmeticError(f"gamma^{n} - delta^{n} is not rational")
        q, r = divmod(diff.x, a1)
    else:
        # gamma^2 - delta^2 = a1 * (2 alpha - a1)
        q, r = divmod(diff.y, 2 * a1)
        if diff.x != -a1 * a1 * q:
            raise ArithmeticError(f"gamma^{n} - delta^{n} not a multiple of gamma^2 - delta^2")
    if r:
        raise ArithmeticError(f"inexact division for lehmer term {n}")
    return q


def lehmer_term(params, n: int) -> int:
    if n < 0:
        raise ValueError("lehmer_term needs n >= 0")
    return _lehmer(_params(params).a1, n)


def lehmer_companion(params, n: int) -> int:
    """v_n = (gamma**n + delta**n) / (gamma + delta) for odd n."""
    if n < 1 or n % 2 == 0:
        raise ValueError("the companion sequence is defined for odd n >= 1 only")
    params = _params(params)
    g, d = gamma_delta(params)
    s = g**n + d**n
    # gamma + delta = 2 alpha - a1
    q, r = divmod(s.y, 2)
    if r or s.x != -params.a1 * q:
        raise ArithmeticError(f"gamma^{n} + delta^{n} not a multiple of gamma + delta")
    return q


@lru_cache(maxsize=None)
def _cyclotomic(a1: int, n: int) -> int:
    acc = Fraction(1)
    for d in divisors(n):
        mu = moebius(n // d)
        if mu:
            acc *= Fraction(_lehmer(a1, d)) ** mu
    if acc.denominator != 1:
        raise ArithmeticError(f"phi_{n} came out non-integral: {acc}")
    return acc.numerator


def cyclotomic_num(params, n: int) -> int:
    if n < 3:
        raise ValueError("cyclotomic numbers are integral from n = 3 on")
    return _cyclotomic(_params(params).a1, n)


@dataclass(frozen=True)
class PrimitiveDivisorReport:
    n: int
    primitive: tuple[tuple[int, int], ...]
    phi_n: int
    residual: int
    complete: bool
    unfactored: int = 1
    notes: tuple[str, ...] = field(default=())

    @property
    def odd_primitive(self) -> list[tuple[int, int]]:
        return [(p, e) for p, e in self.primitive if p % 2]

    def has_odd_primitive(self) -> bool:
        """Existence is decided even when factoring stopped early: for n >= 5
        every prime factor of the unfactored cofactor is primitive and odd."""
        return bool(self.odd_primitive) or self.unfactored > 1


def _is_primitive_by_definition(a1: int, n: int, p: int) -> bool:
    if _lehmer(a1, n) % p:
        return False
    if (a1 * a1 * (a1 * a1 + 4)) % p == 0:
        return False
    return all(_lehmer(a1, k) % p for k in range(1, n))


@lru_cache(maxsize=None)
def _primitive_divisors(a1: int, n: int, budget: int, seed: int) -> PrimitiveDivisorReport:
    phi = _cyclotomic(a1, n)
    if n in (3, 4, 6):
        ell = _lehmer(a1, n)
        fac = factorize(abs(ell), budget, seed)
        prim = tuple(
            (p, p_adic_val(ell, p)) for p in fac.primes if _is_primitive_by_definition(a1, n, p)
        )
        found = 1
        for p, e in prim:
            found *= p**e
        # phi_n = ell_n / (ell's non-primitive part); primitive primes divide phi_n fully
        return PrimitiveDivisorReport(
            n, prim, phi, abs(phi) // found, fac.complete, fac.cofactor, ("definition",)
        )

    allowed = {2, 3} if n == 12 else {p_prime_excl3(n)}
    fac = factorize(abs(phi), budget, seed)
    prim = []
    residual = 1
    for p, e in fac.factors:
        if p in allowed:
            if e != 1:
                raise ArithmeticError(f"non-primitive {p} divides phi_{n} to power {e}")
            residual *= p
        else:
            prim.append((p, e))
    return PrimitiveDivisorReport(n, tuple(prim), phi, residual, fac.complete, fac.cofactor)


def primitive_divisors(
    params, n: int, budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED
) -> PrimitiveDivisorReport:
    """Primitive prime divisors of ell_n with their exponents nu_p(ell_n).

    For n >= 5, n != 6 the primitive part of ell_n is the primitive part of
    phi_n; the remaining factor of |phi_n| is 1 or P'(n) (or divides 6 when
    n = 12).  For n in {3, 4, 6} primitivity is tested against the definition.
    """
    if n < 3:
        raise ValueError("primitive divisors only exist for n >= 3")
    return _primitive_divisors(abs(_params(params).a1), n, budget, seed)


def high_primitive_divisor(
    params, n: int, budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED
) -> tuple[int, int] | None:
    """Largest odd primitive p with p**nu_p(ell_n) > n, or None if there is none.

    Raises BudgetExceeded when factoring stopped before the answer was known.
    """
    rep = primitive_divisors(params, n, budget, seed)
    high = [(p, e) for p, e in rep.odd_primitive if p**e > n]
    if high:
        return max(high)
    if not rep.complete:
        raise BudgetExceeded(n, f"could not factor phi_{n} within budget {budget}")
    return None


def guarantee_odd_primdiv(params, n: int) -> bool:
    a1 = abs(_params(params).a1)
    return n not in ODD_EXCEPTIONS.get(a1, ())


def guarantee_high_primdiv(params, n: int) -> bool:
    a1 = abs(_params(params).a1)
    return n not in HIGH_EXCEPTIONS.get(a1, ())
