"""Slow, obviously-correct reference computations used as test oracles.

Nothing here imports rhoset.
"""

from math import gcd


def brute_factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def brute_is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def brute_phi(n):
    return sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)


def brute_mobius(n):
    f = brute_factor(n)
    if any(e > 1 for e in f.values()):
        return 0
    return (-1) ** len(f)


def squares_mod(p):
    return {x * x % p for x in range(1, p)}


def brute_legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if a in squares_mod(p) else -1


def brute_roots(a1, m):
    return [x for x in range(m) if (x * x - a1 * x - 1) % m == 0]


def brute_int_order(g, m):
    x, k = g % m, 1
    while x != 1 % m:
        x = x * g % m
        k += 1
        if k > m:
            raise ValueError("not a unit")
    return k


def _qmul(a1, m, s, t):
    # (u + v X)(u' + v' X) with X^2 = a1 X + 1
    u, v = s
    w, z = t
    return ((u * w + v * z) % m, (u * z + v * w + a1 * v * z) % m)


def brute_quad_order(a1, m, elt):
    x, k = elt, 1
    one = (1 % m, 0)
    while x != one:
        x = _qmul(a1, m, x, elt)
        k += 1
        if k > m * m:
            raise ValueError("not a unit")
    return k


def lucas_uv(a1, n):
    """U_n and V_n of X^2 - a1 X - 1 by their integer recurrences."""
    u0, u1, v0, v1 = 0, 1, 2, a1
    for _ in range(n):
        u0, u1 = u1, a1 * u1 + u0
        v0, v1 = v1, a1 * v1 + v0
    return u0, v0


def oracle_lehmer(a1, n):
    """ell_n = V_n / a1 (n odd) or U_n / a1 (n even)."""
    u, v = lucas_uv(a1, n)
    num = v if n % 2 else u
    if n == 0:
        return 0
    assert num % a1 == 0
    return num // a1


def oracle_companion(a1, n):
    """(gamma^n + delta^n)/(gamma + delta) = U_n for odd n."""
    return lucas_uv(a1, n)[0]


def brute_orbit(a1, x0, x1, m):
    """Period and residue set by generating terms until the pair repeats."""
    seq = [x0 % m, x1 % m]
    while True:
        seq.append((a1 * seq[-1] + seq[-2]) % m)
        t = len(seq) - 2
        if seq[-2:] == seq[:2]:
            return t, set(seq[:t])
        if t > 6 * m * m + 6:
            raise RuntimeError("no period found")


def brute_class_rho(a1, x0, x1, m, r, d, terms):
    x, y = x0, x1
    seen = set()
    for n in range(terms):
        if n % d == r:
            seen.add(x % m)
        x, y = y, a1 * y + x
    return len(seen)


def brute_primitive(a1, n):
    """Primitive prime divisors of ell_n straight from the definition."""
    ell = oracle_lehmer(a1, n)
    bad = a1 * a1 * (a1 * a1 + 4)
    prev = [oracle_lehmer(a1, k) for k in range(1, n)]
    out = []
    for p in brute_factor_big(abs(ell)):
        if bad % p and all(x % p for x in prev):
            e, t = 0, ell
            while t % p == 0:
                t //= p
                e += 1
            out.append((p, e))
    return out


def brute_factor_big(n):
    """Distinct primes of n by plain trial division up to 10**6 plus a
    Fermat-free fallback: whatever remains is checked with pow tests."""
    primes = []
    d = 2
    while d * d <= n and d < 10**6:
        if n % d == 0:
            primes.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        if d * d > n or _strong_probable_prime(n):
            primes.append(n)
        else:
            raise ValueError(f"oracle cannot factor {n}")
    return primes


def _strong_probable_prime(n):
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
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
