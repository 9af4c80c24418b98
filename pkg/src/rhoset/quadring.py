"""Arithmetic in Z[alpha], alpha**2 = a1*alpha + 1, and in its residue rings.

Everything here stays inside Z[alpha].  That is only the full ring of
integers away from the primes dividing D = a1**2 + 4, so every function that
reduces modulo a prime power insists on p not dividing D.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import NamedTuple

from .intmath import factorize, is_probable_prime, legendre, sqrt_mod_prime


@dataclass(frozen=True)
class RingParams:
    a1: int

    def __post_init__(self):
        if self.a1 == 0:
            raise ValueError("a1 must be nonzero")
        d = self.D
        if isqrt(d) ** 2 == d:
            raise ValueError(f"discriminant {d} is a perfect square")

    @property
    def D(self) -> int:
        return self.a1 * self.a1 + 4

    @property
    def alpha(self) -> QuadInt:
        return QuadInt(0, 1, self)

    @property
    def beta(self) -> QuadInt:
        return QuadInt(self.a1, -1, self)

    @property
    def sqrt_d(self) -> QuadInt:
        """alpha - beta = 2*alpha - a1."""
        return QuadInt(-self.a1, 2, self)

    def one(self) -> QuadInt:
        return QuadInt(1, 0, self)

    def const(self, c: int) -> QuadInt:
        return QuadInt(c, 0, self)


def _params(a1_or_params) -> RingParams:
    if isinstance(a1_or_params, RingParams):
        return a1_or_params
    return RingParams(a1_or_params)


@dataclass(frozen=True)
class QuadInt:
    """The element x + y*alpha of Z[alpha]."""

    x: int
    y: int
    params: RingParams

    def _coerce(self, other) -> QuadInt:
        if isinstance(other, int):
            return QuadInt(other, 0, self.params)
        if not isinstance(other, QuadInt):
            return NotImplemented
        if other.params != self.params:
            raise ValueError("operands live in different rings")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadInt(self.x + other.x, self.y + other.y, self.params)

    __radd__ = __add__

    def __neg__(self):
        return QuadInt(-self.x, -self.y, self.params)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadInt(self.x - other.x, self.y - other.y, self.params)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        yy = self.y * other.y
        return QuadInt(
            self.x * other.x + yy,
            self.x * other.y + self.y * other.x + self.params.a1 * yy,
            self.params,
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.unit_inverse() ** (-n)
        result, base = self.params.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> QuadInt:
        # alpha -> a1 - alpha
        return QuadInt(self.x + self.params.a1 * self.y, -self.y, self.params)

    def norm(self) -> int:
        return self.x * self.x + self.params.a1 * self.x * self.y - self.y * self.y

    def trace(self) -> int:
        return 2 * self.x + self.params.a1 * self.y

    def unit_inverse(self) -> QuadInt:
        n = self.norm()
        if n not in (1, -1):
            raise ValueError(f"{self} is not a unit (norm {n})")
        c = self.conj()
        return c if n == 1 else -c

    def is_rational(self) -> bool:
        return self.y == 0

    def sign(self) -> int:
        """Sign of the real number x + y*alpha, alpha = (a1 + sqrt D)/2."""
        # 2(x + y*alpha) = (2x + a1*y) + y*sqrt(D)
        return _sign_surd(2 * self.x + self.params.a1 * self.y, self.y, self.params.D)

    def exact_div(self, k: int) -> QuadInt:
        if self.x % k or self.y % k:
            raise ArithmeticError(f"{self} is not divisible by {k}")
        return QuadInt(self.x // k, self.y // k, self.params)

    def __repr__(self):
        return f"QuadInt({self.x} + {self.y}*alpha; a1={self.params.a1})"


def _sign_surd(p: int, q: int, d: int) -> int:
    """Sign of p + q*sqrt(d) for a non-square d > 0."""
    sp = (p > 0) - (p < 0)
    sq = (q > 0) - (q < 0)
    if sq == 0 or sp == sq:
        return sp if sp else sq
    if sp == 0:
        return sq
    # opposite signs: compare magnitudes
    return sp if p * p > q * q * d else sq


def qi_arith(op: str, lhs: QuadInt, rhs: QuadInt | None = None):
    if op in ("add", "sub", "mul"):
        if rhs is None:
            raise ValueError(f"{op} needs two operands")
        if rhs.params != lhs.params:
            raise ValueError("operands live in different rings")
        return {"add": lhs + rhs, "sub": lhs - rhs, "mul": lhs * rhs}[op]
    if op == "conj":
        return lhs.conj()
    if op == "norm":
        return lhs.norm()
    raise ValueError(f"unknown operation {op!r}")


def alpha_pow(params, n: int) -> QuadInt:
    return _params(params).alpha ** n


def surd_interval(p: int, q: int, r: int, d: int, bits: int) -> tuple[Fraction, Fraction]:
    """Rational enclosure of (p + q*sqrt(d)) / r, of width at most |q|/(|r|*2**bits)."""
    s = isqrt(d << (2 * bits))  # floor(sqrt(d) * 2**bits)
    lo_s = Fraction(s, 1 << bits)
    hi_s = Fraction(s + 1, 1 << bits)
    a, b = p + q * lo_s, p + q * hi_s
    lo, hi = min(a, b) / r, max(a, b) / r
    return (lo, hi) if r > 0 else (hi, lo)


# -- residue rings -----------------------------------------------------------


@dataclass(frozen=True)
class ModQuad:
    """u + v*alpha in (Z/modulus)[X]/(X**2 - a1*X - 1)."""

    u: int
    v: int
    modulus: int
    params: RingParams

    def __post_init__(self):
        object.__setattr__(self, "u", self.u % self.modulus)
        object.__setattr__(self, "v", self.v % self.modulus)

    @classmethod
    def lift(cls, z: QuadInt | int, modulus: int, params: RingParams | None = None) -> ModQuad:
        if isinstance(z, int):
            return cls(z, 0, modulus, params)
        return cls(z.x, z.y, modulus, z.params)

    def _check(self, other: ModQuad):
        if other.modulus != self.modulus or other.params != self.params:
            raise ValueError("operands live in different residue rings")

    def __add__(self, other: ModQuad) -> ModQuad:
        self._check(other)
        return ModQuad(self.u + other.u, self.v + other.v, self.modulus, self.params)

    def __sub__(self, other: ModQuad) -> ModQuad:
        self._check(other)
        return ModQuad(self.u - other.u, self.v - other.v, self.modulus, self.params)

    def __neg__(self) -> ModQuad:
        return ModQuad(-self.u, -self.v, self.modulus, self.params)

    def __mul__(self, other: ModQuad) -> ModQuad:
        self._check(other)
        vv = self.v * other.v
        return ModQuad(
            self.u * other.u + vv,
            self.u * other.v + self.v * other.u + self.params.a1 * vv,
            self.modulus,
            self.params,
        )

    def __pow__(self, n: int) -> ModQuad:
        if n < 0:
            return self.inverse() ** (-n)
        result = ModQuad(1, 0, self.modulus, self.params)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def norm(self) -> int:
        return (self.u * self.u + self.params.a1 * self.u * self.v - self.v * self.v) % self.modulus

    def conj(self) -> ModQuad:
        return ModQuad(self.u + self.params.a1 * self.v, -self.v, self.modulus, self.params)

    def is_unit(self) -> bool:
        try:
            pow(self.norm(), -1, self.modulus)
        except ValueError:
            return False
        return True

    def inverse(self) -> ModQuad:
        n_inv = pow(self.norm(), -1, self.modulus)  # ValueError when not a unit
        c = self.conj()
        return ModQuad(c.u * n_inv, c.v * n_inv, self.modulus, self.params)

    def is_one(self) -> bool:
        return self.u == 1 % self.modulus and self.v == 0


class SplitKind(str, Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class IdealDesc:
    p: int
    v: int
    kind: SplitKind
    root: int | None = None


def split_type(params, p: int) -> SplitKind:
    params = _params(params)
    s = legendre(params.D, p)
    if s == 0:
        return SplitKind.RAMIFIED
    return SplitKind.SPLIT if s == 1 else SplitKind.INERT


def _require_odd_prime_off_d(params: RingParams, p: int):
    if p < 3 or p % 2 == 0 or not is_probable_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if params.D % p == 0:
        raise ValueError(f"p = {p} divides the discriminant {params.D}")


def lift_root(params, p: int, v: int = 1) -> int:
    """Smaller root of X**2 - a1*X - 1 modulo p**v, Hensel-lifted from mod p."""
    params = _params(params)
    _require_odd_prime_off_d(params, p)
    if split_type(params, p) is not SplitKind.SPLIT:
        raise ValueError(f"X^2 - {params.a1}X - 1 has no root modulo {p}")
    a1 = params.a1
    s = sqrt_mod_prime(params.D, p)
    r = (a1 + s) * pow(2, -1, p) % p
    mod = p
    while mod < p**v:
        mod = min(mod * mod, p**v)
        f = (r * r - a1 * r - 1) % mod
        r = (r - f * pow(2 * r - a1, -1, mod)) % mod
    other = (a1 - r) % mod
    return min(r, other)


def ideal_desc(params, p: int, v: int = 1) -> IdealDesc:
    params = _params(params)
    kind = split_type(params, p)
    root = lift_root(params, p, v) if kind is SplitKind.SPLIT else None
    return IdealDesc(p, v, kind, root)


def _prime_power_exponent(p: int, v: int, tail: int) -> dict[int, int]:
    fac = factorize(tail).as_dict()
    if v > 1:
        fac[p] = fac.get(p, 0) + v - 1
    return fac


def element_order(x, exponent: dict[int, int], is_one, power) -> int:
    """Order of ``x`` given a multiple of it in factored form.

    Strips prime factors from the exponent while the power stays trivial.
    """
    n = 1
    for q, e in exponent.items():
        n *= q**e
    if not is_one(power(x, n)):
        raise ArithmeticError("exponent is not a multiple of the order")
    for q, e in exponent.items():
        for _ in range(e):
            if n % q == 0 and is_one(power(x, n // q)):
                n //= q
            else:
                break
    return n


def int_order(g: int, p: int, v: int) -> int:
    mod = p**v
    return element_order(
        g % mod,
        _prime_power_exponent(p, v, p - 1),
        lambda t: t == 1 % mod,
        lambda t, k: pow(t, k, mod),
    )


def quad_order(z: ModQuad, p: int, v: int) -> int:
    return element_order(
        z,
        _prime_power_exponent(p, v, p * p - 1),
        lambda t: t.is_one(),
        lambda t, k: t**k,
    )


class Orders(NamedTuple):
    a: int  # order of alpha
    b: int  # order of beta
    c: int  # order of alpha**2
    alpha_root: int | None  # residue standing for alpha when p splits


def ord_alpha2(params, p: int, v: int = 1) -> int:
    """Multiplicative order of alpha**2 modulo the v-th power of a prime above p."""
    params = _params(params)
    _require_odd_prime_off_d(params, p)
    mod = p**v
    if split_type(params, p) is SplitKind.SPLIT:
        r = lift_root(params, p, v)
        return int_order(r * r % mod, p, v)
    a = ModQuad(0, 1, mod, params)
    return quad_order(a * a, p, v)


def ord_alpha_beta(params, p: int, v: int = 1) -> Orders:
    """Orders of alpha, beta and alpha**2.

    In the split case the prime above p is chosen so that alpha carries the
    larger order 2c whenever c is odd; otherwise alpha is the smaller root.
    """
    params = _params(params)
    _require_odd_prime_off_d(params, p)
    mod = p**v
    if split_type(params, p) is SplitKind.SPLIT:
        r = lift_root(params, p, v)
        s = (params.a1 - r) % mod
        ord_r, ord_s = int_order(r, p, v), int_order(s, p, v)
        c = int_order(r * r % mod, p, v)
        if ord_s > ord_r:
            r, s, ord_r, ord_s = s, r, ord_s, ord_r
        return Orders(ord_r, ord_s, c, r)
    alpha = ModQuad(0, 1, mod, params)
    beta = ModQuad(params.a1, -1, mod, params)
    return Orders(quad_order(alpha, p, v), quad_order(beta, p, v), quad_order(alpha * alpha, p, v), None)
