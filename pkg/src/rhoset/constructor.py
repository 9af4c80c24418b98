"""Build (x0, x1, m) with exactly n distinct residues, for any nonzero a1.

Dispatch for a1 >= 1:

* n = 1, 2: m = 1 or 2, or small nonzero orbits modulo a1;
* n = 4: explicit orbits modulo 2*a1;
* n odd: x = (1, a) modulo a primitive prime p of ell_n, where a is a root of
  f modulo p of order n;
* n = 2n' with n' odd: the same with the root of order 2n';
* n = 2n' with n' even: a high primitive prime p of ell_{n'}; if f splits
  modulo p as before, otherwise an orbit modulo p**v with distinct residues
  inside each parity class, glued by CRT to a short orbit modulo a1 (or 5).

The handful of (a1, n) where the needed primitive divisor does not exist are
covered by a fixed table of small orbits.  Negative a1 goes through the
reversal map.  Every certificate is re-simulated before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .errors import (
    BudgetExceeded,
    ImpossibleNonzero,
    NoPrimitiveDivisor,
    Unrepresentable,
    VerificationError,
)
from .intmath import DEFAULT_BUDGET, DEFAULT_SEED, legendre, p_adic_val
from .lehmer import (
    _is_primitive_by_definition,
    guarantee_high_primdiv,
    guarantee_odd_primdiv,
    high_primitive_divisor,
    lehmer_term,
    primitive_divisors,
)
from .quadring import ModQuad, RingParams, lift_root
from .recurrence import RecurrenceInstance, crt_combine, orbit_stats, reverse_instance

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class TableRow:
    index: int
    a1: int
    x0: int
    x1: int
    m: int
    tau: int
    rho: int
    nonzero: bool


# fmt: off
TABLE = (
    TableRow(1, 1, 0, 1, 3, 8, 3, False),
    TableRow(2, 1, 1, 3, 5, 4, 4, True),
    TableRow(3, 1, 1, 3, 8, 12, 6, True),
    TableRow(4, 1, 1, 3, 10, 12, 8, True),
    TableRow(5, 1, 1, 3, 13, 28, 12, True),
    TableRow(6, 1, 1, 3, 17, 36, 16, True),
    TableRow(7, 1, 1, 3, 28, 48, 20, True),
    TableRow(8, 1, 1, 3, 26, 84, 24, True),
    TableRow(9, 1, 1, 3, 56, 48, 28, True),
    TableRow(10, 1, 1, 3, 52, 84, 36, True),
    TableRow(11, 1, 1, 3, 78, 168, 48, True),
    TableRow(12, 2, 1, 1, 4, 4, 2, True),
    TableRow(13, 2, 1, 1, 5, 12, 4, True),
    TableRow(14, 2, 1, 1, 28, 12, 8, True),
    TableRow(15, 2, 1, 1, 13, 28, 12, True),
    TableRow(16, 2, 1, 1, 39, 56, 24, True),
    TableRow(17, 3, 1, 1, 9, 6, 3, True),
    TableRow(18, 3, 1, 1, 8, 12, 6, True),
    TableRow(19, 3, 1, 1, 17, 16, 12, True),
)
# fmt: on


@dataclass
class ConstructionPath:
    tag: str
    params: dict[str, Any] = field(default_factory=dict)
    inner: ConstructionPath | None = None

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"tag": self.tag}
        for k, v in self.params.items():
            out[k] = str(v) if isinstance(v, int) and not isinstance(v, bool) else v
        if self.inner is not None:
            out["inner"] = self.inner.to_dict()
        return out

    @classmethod
    def from_dict(cls, d: dict) -> ConstructionPath:
        d = dict(d)
        tag = d.pop("tag")
        inner = d.pop("inner", None)
        params = {k: int(v) if isinstance(v, str) and v.lstrip("-").isdigit() else v for k, v in d.items()}
        return cls(tag, params, cls.from_dict(inner) if inner else None)


@dataclass
class Certificate:
    a1: int
    target: int
    m: int
    x0: int
    x1: int
    tau: int
    residues: tuple[int, ...]
    nonzero: bool
    path: ConstructionPath
    verified: bool = False

    @property
    def rho(self) -> int:
        return len(self.residues)

    @property
    def instance(self) -> RecurrenceInstance:
        return RecurrenceInstance(self.a1, self.x0, self.x1)

    def recheck(self) -> bool:
        s = orbit_stats(self.instance, self.m)
        return (
            s.rho == self.target
            and s.tau == self.tau
            and s.nonzero == self.nonzero
            and s.residues == tuple(self.residues)
        )

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "a1": self.a1,
            "target": self.target,
            "m": str(self.m),
            "x0": str(self.x0),
            "x1": str(self.x1),
            "tau": self.tau,
            "residues": [str(r) for r in self.residues],
            "nonzero": self.nonzero,
            "path": self.path.to_dict(),
            "verified": self.verified,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Certificate:
        if d.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported certificate schema {d.get('schema')!r}")
        return cls(
            a1=int(d["a1"]),
            target=int(d["target"]),
            m=int(d["m"]),
            x0=int(d["x0"]),
            x1=int(d["x1"]),
            tau=int(d["tau"]),
            residues=tuple(int(r) for r in d["residues"]),
            nonzero=bool(d["nonzero"]),
            path=ConstructionPath.from_dict(d["path"]),
            verified=bool(d["verified"]),
        )


def certify(
    a1: int, target: int, m: int, x0: int, x1: int, path: ConstructionPath, require_nonzero: bool = False
) -> Certificate:
    s = orbit_stats(RecurrenceInstance(a1, x0, x1), m)
    if s.rho != target:
        raise VerificationError(
            f"{path.tag}: (a1={a1}, x0={x0}, x1={x1}, m={m}) gives rho={s.rho}, wanted {target}"
        )
    if require_nonzero and not s.nonzero:
        raise VerificationError(f"{path.tag}: orbit modulo {m} hits 0")
    return Certificate(a1, target, m, x0, x1, s.tau, s.residues, s.nonzero, path, verified=True)


def table_lookup(a1: int, target: int, require_nonzero: bool = False) -> Certificate | None:
    for row in TABLE:
        if row.a1 == a1 and row.rho == target and (row.nonzero or not require_nonzero):
            return certify(a1, target, row.m, row.x0, row.x1, ConstructionPath("TableRow", {"index": row.index}))
    return None


def _table_row(index: int) -> TableRow:
    return TABLE[index - 1]


def construct_n4(a1: int) -> Certificate:
    if a1 < 1:
        raise ValueError("construct_n4 needs a1 >= 1")
    if a1 in (1, 2):
        row = _table_row(2 if a1 == 1 else 13)
        return certify(a1, 4, row.m, row.x0, row.x1, ConstructionPath("N4", {"branch": "table", "row": row.index}), True)
    if a1 % 2:
        return certify(a1, 4, 2 * a1, 1, 2, ConstructionPath("N4", {"branch": "odd"}), True)
    return certify(a1, 4, 2 * a1, 1, 3, ConstructionPath("N4", {"branch": "even"}), True)


def _split_primitive_prime(a1: int, n: int, budget: int, seed: int) -> int:
    params = RingParams(a1)
    rep = primitive_divisors(params, n, budget, seed)
    split = [p for p, _ in rep.odd_primitive if legendre(params.D, p) == 1]
    if split:
        return min(split)
    if rep.unfactored > 1:
        raise BudgetExceeded(n, f"phi_{n} only partly factored within budget {budget}")
    raise NoPrimitiveDivisor(f"ell_{n} has no odd primitive divisor that splits (a1={a1})")


def construct_odd_primitive(
    a1: int,
    n: int,
    doubled: bool,
    p: int | None = None,
    budget: int = DEFAULT_BUDGET,
    seed: int = DEFAULT_SEED,
) -> Certificate:
    """Orbit of (1, a) modulo a split primitive prime p of ell_n.

    a is a root of f modulo p, so x_k = a**k; its order is 2n or n.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    if not doubled and n % 2 == 0:
        raise ValueError("the order-n root exists only for odd n")
    if p is None:
        p = _split_primitive_prime(a1, n, budget, seed)
    r = lift_root(a1, p)
    s = (a1 - r) % p
    # alpha**2 has order n modulo p, so each root has order n or 2n
    want_n = [root for root in (r, s) if pow(root, n, p) == 1]
    want_2n = [root for root in (r, s) if pow(root, n, p) != 1]
    pool = want_2n if doubled else want_n
    if not pool:
        raise VerificationError(f"no root of order {'2n' if doubled else 'n'} modulo {p} (n={n})")
    root = min(pool)
    target = 2 * n if doubled else n
    path = ConstructionPath("OddPrimitive", {"n": n, "p": p, "root": root, "order": target})
    return certify(a1, target, p, 1, root, path, True)


def excluded_parity_values(a1: int, p: int, v: int, n: int) -> set[int]:
    """Integers c (mod p**v) ruled out as x1 in the parity construction."""
    params = RingParams(a1)
    mod = p**v
    alpha = ModQuad(0, 1, mod, params)
    beta = ModQuad(a1, -1, mod, params)
    one = ModQuad(1, 0, mod, params)
    a2 = alpha * alpha
    power = one  # alpha**(2k)
    out = set()
    for _ in range(n):
        denom = one - power
        if denom.is_unit():
            w = (beta - power * alpha) * denom.inverse()
            if w.v == 0:
                out.add(w.u)
        power = power * a2
    return out


def choose_parity_c(a1: int, p: int, v: int, n: int) -> int:
    params = RingParams(a1)
    if n < 4 or n % 2:
        raise ValueError("n must be even and >= 4")
    if legendre(params.D, p) != -1:
        raise ValueError(f"p = {p} must be inert")
    if p_adic_val(lehmer_term(params, n), p) != v:
        raise ValueError(f"p**{v} is not the exact power of {p} in ell_{n}")
    if p**v <= n:
        raise ValueError(f"p**v = {p**v} is not larger than n = {n}")
    if not _is_primitive_by_definition(a1, n, p):
        raise ValueError(f"{p} is not a primitive divisor of ell_{n}")
    excluded = excluded_parity_values(a1, p, v, n)
    c = 0
    while c in excluded:
        c += 1
    return c


def construct_even(a1: int, n: int, budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED) -> Certificate:
    """rho = 2n for even n >= 4 from a high primitive divisor of ell_n."""
    if n < 4 or n % 2:
        raise ValueError("construct_even needs even n >= 4")
    params = RingParams(a1)
    hp = high_primitive_divisor(params, n, budget, seed)
    if hp is None:
        raise NoPrimitiveDivisor(f"ell_{n} has no high primitive divisor (a1={a1})")
    p, v = hp
    if legendre(params.D, p) == 1:
        cert = construct_odd_primitive(a1, n, True, p=p)
        cert.path = ConstructionPath("EvenSplit", {"n": n, "p": p, "root": cert.x1})
        return cert

    c = choose_parity_c(a1, p, v, n)
    m1 = p**v
    inst1 = RecurrenceInstance(a1, 1, c)
    s1 = orbit_stats(inst1, m1, class_mods=(2, 4))
    if s1.tau != 2 * n or not s1.nonzero:
        raise VerificationError(f"parity orbit modulo {m1}: tau={s1.tau}, nonzero={s1.nonzero}")
    if any(s1.class_rho[(r, 2)] != n for r in range(2)) or any(
        s1.class_rho[(r, 4)] != n // 2 for r in range(4)
    ):
        raise VerificationError(f"parity orbit modulo {m1} repeats inside a class")
    if a1 == 1:
        row = _table_row(2)
        inst2, m2 = RecurrenceInstance(1, row.x0, row.x1), row.m
    else:
        inst2, m2 = RecurrenceInstance(a1, 0, 1), a1
    comb = crt_combine(inst1, m1, inst2, m2)
    if comb.predicted_rho != 2 * n:
        raise VerificationError(f"combination predicts rho={comb.predicted_rho}, wanted {2 * n}")
    path = ConstructionPath(
        "EvenInertCombine", {"n": n, "p": p, "v": v, "c": c, "m2": m2, "d": comb.d}
    )
    return certify(a1, 2 * n, comb.m, comb.inst.x0, comb.inst.x1, path, True)


def _construct_zero_a1(n: int, require_nonzero: bool) -> Certificate:
    # x_n = x_{n-2}: at most two residues
    if n == 1:
        if require_nonzero:
            return certify(0, 1, 2, 1, 1, ConstructionPath("NonzeroSmall", {"n": 1}), True)
        return certify(0, 1, 1, 0, 1, ConstructionPath("Trivial1"))
    if n == 2:
        if require_nonzero:
            return certify(0, 2, 3, 1, 2, ConstructionPath("NonzeroSmall", {"n": 2}), True)
        return certify(0, 2, 2, 0, 1, ConstructionPath("Parity2"))
    raise Unrepresentable(f"X^2 - 1 only reaches 1 or 2 residues, not {n}")


def _construct_positive(a1: int, n: int, require_nonzero: bool, budget: int, seed: int) -> Certificate:
    if require_nonzero and a1 == 1 and n <= 3:
        raise ImpossibleNonzero(f"a1 = 1 cannot give {n} nonzero residues")
    if n == 1:
        if require_nonzero:
            return certify(a1, 1, a1, 1, 1, ConstructionPath("NonzeroSmall", {"n": 1}), True)
        return certify(a1, 1, 1, 0, 1, ConstructionPath("Trivial1"))
    found = table_lookup(a1, n, require_nonzero)
    if found is not None:
        return found
    if n == 2:
        if require_nonzero:
            return certify(a1, 2, a1, 1, 2, ConstructionPath("NonzeroSmall", {"n": 2}), True)
        return certify(a1, 2, 2, 0, 1, ConstructionPath("Parity2"))
    if n == 4:
        return construct_n4(a1)
    if n % 2:
        if not guarantee_odd_primdiv(a1, n):
            raise VerificationError(f"no table entry for the exceptional case a1={a1}, n={n}")
        return construct_odd_primitive(a1, n, False, budget=budget, seed=seed)
    half = n // 2
    if half % 2:
        if not guarantee_odd_primdiv(a1, half):
            raise VerificationError(f"no table entry for the exceptional case a1={a1}, n={n}")
        return construct_odd_primitive(a1, half, True, budget=budget, seed=seed)
    if not guarantee_high_primdiv(a1, half):
        raise VerificationError(f"no table entry for the exceptional case a1={a1}, n={n}")
    return construct_even(a1, half, budget, seed)


def construct(
    a1: int,
    n: int,
    require_nonzero: bool = False,
    budget: int = DEFAULT_BUDGET,
    seed: int = DEFAULT_SEED,
) -> Certificate:
    """A verified certificate for rho(x; m) = n with x in L(X**2 - a1*X - 1)."""
    if n < 1:
        raise ValueError("target must be >= 1")
    if a1 == 0:
        return _construct_zero_a1(n, require_nonzero)
    if a1 > 0:
        return _construct_positive(a1, n, require_nonzero, budget, seed)
    inner = _construct_positive(-a1, n, require_nonzero, budget, seed)
    rev = reverse_instance(inner.instance, inner.m)
    cert = certify(a1, n, inner.m, rev.x0, rev.x1, ConstructionPath("Reversed", inner=inner.path), require_nonzero)
    if (cert.tau, cert.nonzero) != (inner.tau, inner.nonzero):
        raise VerificationError("reversal changed tau or the nonzero flag")
    return cert


def nonzero_possible(a1: int, n: int) -> bool:
    """Whether some certificate with all residues nonzero exists."""
    if a1 == 0:
        return n <= 2
    return abs(a1) >= 2 or n >= 4
