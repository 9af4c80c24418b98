import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from math import lcm

from oracles import brute_int_order, brute_is_prime, brute_quad_order, brute_roots
from rhoset.quadring import (
    ModQuad,
    QuadInt,
    RingParams,
    SplitKind,
    alpha_pow,
    lift_root,
    ord_alpha2,
    ord_alpha_beta,
    qi_arith,
    split_type,
)

ODD_PRIMES_100 = [p for p in range(3, 101, 2) if brute_is_prime(p)]


def test_ring_identities():
    for a1 in (1, 2, -3, 7):
        R = RingParams(a1)
        al, be = R.alpha, R.beta
        assert al * be == R.const(-1)
        assert al + be == R.const(a1)
        assert R.sqrt_d * R.sqrt_d == R.const(R.D)
        assert al * al == a1 * al + 1


def test_zero_a1_rejected():
    with pytest.raises(ValueError):
        RingParams(0)


def test_qi_arith_examples():
    R = RingParams(2)
    al = R.alpha
    assert qi_arith("mul", al, al - 2) == R.one()
    assert qi_arith("mul", al, R.beta) == R.const(-1)
    assert qi_arith("conj", al) == 2 - al
    assert qi_arith("norm", RingParams(1).sqrt_d) == -5
    with pytest.raises(ValueError):
        qi_arith("add", al, RingParams(3).alpha)


@settings(max_examples=200, deadline=None)
@given(st.integers(-6, 6).filter(bool), *[st.integers(-50, 50)] * 4)
def test_norm_is_multiplicative(a1, x1, y1, x2, y2):
    R = RingParams(a1)
    u, v = QuadInt(x1, y1, R), QuadInt(x2, y2, R)
    assert (u * v).norm() == u.norm() * v.norm()
    assert u * u.conj() == R.const(u.norm())


def test_alpha_pow_examples():
    R = RingParams(1)
    assert alpha_pow(R, 0) == R.one()
    assert alpha_pow(R, 2) == R.one() + R.alpha
    for a1 in (1, 2, 5):
        R = RingParams(a1)
        assert alpha_pow(R, -1) == R.alpha - a1
        assert alpha_pow(R, 7) * alpha_pow(R, -7) == R.one()


@settings(max_examples=200, deadline=None)
@given(st.integers(-6, 6).filter(bool), *[st.integers(-10**6, 10**6)] * 2)
def test_sign_matches_float(a1, x, y):
    R = RingParams(a1)
    z = QuadInt(x, y, R)
    val = x + y * (a1 + R.D**0.5) / 2
    if abs(val) > 1e-6:
        assert z.sign() == (1 if val > 0 else -1)


@pytest.mark.parametrize("a1, p, kind", [(1, 11, "split"), (1, 47, "inert"), (1, 5, "ramified")])
def test_split_type_examples(a1, p, kind):
    assert split_type(a1, p) == SplitKind(kind)


def test_split_type_matches_root_count():
    for a1 in range(1, 6):
        for p in ODD_PRIMES_100:
            roots = brute_roots(a1, p)
            kind = split_type(a1, p)
            assert kind == {2: SplitKind.SPLIT, 0: SplitKind.INERT, 1: SplitKind.RAMIFIED}[len(roots)]


@pytest.mark.parametrize("a1, p, v, root", [(1, 11, 1, 4), (1, 29, 1, 6), (2, 7, 2, 11)])
def test_lift_root_examples(a1, p, v, root):
    assert lift_root(a1, p, v) == root
    assert root == min(brute_roots(a1, p**v))


def test_lift_root_hensel_exhaustive():
    for a1 in range(1, 6):
        for p in ODD_PRIMES_100[:12]:
            if split_type(a1, p) is not SplitKind.SPLIT:
                continue
            for v in (1, 2, 3):
                r = lift_root(a1, p, v)
                assert r == min(brute_roots(a1, p**v))


def test_lift_root_inert_rejected():
    with pytest.raises(ValueError):
        lift_root(1, 47)


def test_modquad_inverse_property():
    rng = random.Random(5)
    for _ in range(300):
        a1 = rng.choice([1, 2, 3, 4, 5, -2])
        p = rng.choice(ODD_PRIMES_100)
        mod = p ** rng.randint(1, 3)
        z = ModQuad(rng.randrange(mod), rng.randrange(mod), mod, RingParams(a1))
        if z.norm() % p == 0:
            assert not z.is_unit()
            continue
        assert (z * z.inverse()).is_one()


def test_square_roots_of_one():
    # split: Z[alpha]/P^v is Z/p^v; inert: P = (p) and the quotient is ModQuad
    for a1 in (1, 2, 3):
        R = RingParams(a1)
        for p in ODD_PRIMES_100:
            kind = split_type(R, p)
            if kind is SplitKind.RAMIFIED:
                continue
            for v in (1, 2, 3):
                mod = p**v
                if kind is SplitKind.SPLIT:
                    sols = [x for x in range(mod) if (x * x - 1) % mod == 0]
                    assert sols == [1, mod - 1]
                elif mod <= 400:
                    sols = [
                        (u, w)
                        for u in range(mod)
                        for w in range(mod)
                        # (u + w alpha)^2 = u^2 + w^2 + (2uw + a1 w^2) alpha
                        if (u * u + w * w - 1) % mod == 0 and (2 * u * w + a1 * w * w) % mod == 0
                    ]
                    assert sorted(sols) == [(1, 0), (mod - 1, 0)]
                else:
                    rng = random.Random(mod)
                    for _ in range(200):
                        z = ModQuad(rng.randrange(mod), rng.randrange(mod), mod, R)
                        sq = z**2
                        if sq.is_one():
                            assert (z.u, z.v) in ((1, 0), (mod - 1, 0))


@pytest.mark.parametrize("a1, p, c", [(1, 11, 5), (1, 29, 7), (1, 47, 16)])
def test_ord_alpha2_examples(a1, p, c):
    assert ord_alpha2(a1, p) == c


def test_ord_alpha_beta_examples():
    o = ord_alpha_beta(1, 11)
    assert (o.a, o.b, o.c) == (10, 5, 5)
    assert o.alpha_root == 8 and brute_int_order(8, 11) == 10
    o = ord_alpha_beta(1, 47)
    assert (o.a, o.b, o.c) == (32, 32, 16) and o.alpha_root is None
    o = ord_alpha_beta(2, 5)
    assert lcm(o.a, o.b) == 2 * o.c
    assert o.c == brute_quad_order(2, 5, (1, 2))  # alpha^2 = 1 + 2 alpha


def test_order_rejects_ramified_and_even():
    with pytest.raises(ValueError):
        ord_alpha2(1, 5)
    with pytest.raises(ValueError):
        ord_alpha2(1, 2)


def test_order_trichotomy():
    for a1 in range(1, 6):
        R = RingParams(a1)
        for p in ODD_PRIMES_100:
            if (a1 * R.D) % p == 0:
                continue
            for v in (1, 2):
                a, b, c, _ = ord_alpha_beta(R, p, v)
                if c % 2:
                    assert {a, b} == {c, 2 * c}
                else:
                    assert a == b == 2 * c
                assert lcm(a, b) == 2 * c


def test_ord_alpha2_is_exact_order():
    for a1 in (1, 3):
        R = RingParams(a1)
        for p in ODD_PRIMES_100:
            if R.D % p == 0:
                continue
            for v in (1, 2):
                n = ord_alpha2(R, p, v)
                a2 = ModQuad(0, 1, p**v, R) ** 2
                assert (a2**n).is_one()
                for q in {q for q in range(2, n + 1) if n % q == 0 and brute_is_prime(q)}:
                    assert not (a2 ** (n // q)).is_one()
