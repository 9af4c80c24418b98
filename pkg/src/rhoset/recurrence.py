"""Recurrences x_n = a1*x_{n-1} + x_{n-2} reduced modulo m.

The step (x, y) -> (y, a1*y + x) is invertible modulo every m, so each orbit
is purely periodic and the period is the first return of the initial pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Iterable

from .intmath import crt_pair


@dataclass(frozen=True)
class RecurrenceInstance:
    a1: int
    x0: int
    x1: int

    def terms(self, count: int) -> list[int]:
        out = []
        x, y = self.x0, self.x1
        for _ in range(count):
            out.append(x)
            x, y = y, self.a1 * y + x
        return out

    def negated(self) -> RecurrenceInstance:
        return RecurrenceInstance(self.a1, -self.x0, -self.x1)


@dataclass(frozen=True)
class OrbitStats:
    m: int
    tau: int
    residues: tuple[int, ...]  # sorted
    rho: int
    nonzero: bool
    period: tuple[int, ...] = field(repr=False)  # x_0 .. x_{tau-1} mod m
    class_rho: dict[tuple[int, int], int] = field(default_factory=dict, compare=False)


def period_residues(inst: RecurrenceInstance, m: int) -> list[int]:
    """One full period x_0, ..., x_{tau-1} reduced into [0, m)."""
    if m < 1:
        raise ValueError("modulus must be >= 1")
    if m == 1:
        return [0]
    a1 = inst.a1 % m
    start = (inst.x0 % m, inst.x1 % m)
    x, y = start
    out = []
    guard = 6 * m * m
    while True:
        out.append(x)
        x, y = y, (a1 * y + x) % m
        if (x, y) == start:
            return out
        if len(out) > guard:
            raise RuntimeError(f"no return to the initial pair within {guard} steps")


def class_counts(period: list[int], d: int) -> dict[int, int]:
    """rho(x; m, r, d) for r = 0..d-1 from one period of residues."""
    tau = len(period)
    span = lcm(tau, d)
    seen: list[set[int]] = [set() for _ in range(d)]
    for n in range(span):
        seen[n % d].add(period[n % tau])
    return {r: len(s) for r, s in enumerate(seen)}


def orbit_stats(inst: RecurrenceInstance, m: int, class_mods: Iterable[int] = ()) -> OrbitStats:
    period = period_residues(inst, m)
    residues = tuple(sorted(set(period)))
    class_rho = {}
    for d in class_mods:
        for r, c in class_counts(period, d).items():
            class_rho[(r, d)] = c
    return OrbitStats(
        m=m,
        tau=len(period),
        residues=residues,
        rho=len(residues),
        nonzero=0 not in residues,
        period=tuple(period),
        class_rho=class_rho,
    )


def reverse_instance(inst: RecurrenceInstance, m: int) -> RecurrenceInstance:
    """Instance of X**2 + a1*X - 1 whose residues run the orbit of ``inst`` backwards."""
    period = period_residues(inst, m)
    t = len(period)
    return RecurrenceInstance(-inst.a1, period[(t - 1) % t], period[(t - 2) % t])


@dataclass(frozen=True)
class Combined:
    inst: RecurrenceInstance
    m: int
    predicted_rho: int
    tau1: int
    tau2: int
    d: int


def crt_combine(
    inst1: RecurrenceInstance, m1: int, inst2: RecurrenceInstance, m2: int
) -> Combined:
    """Glue two orbits with coprime moduli; the second must have rho = tau."""
    if gcd(m1, m2) != 1:
        raise ValueError(f"moduli {m1} and {m2} are not coprime")
    if inst1.a1 != inst2.a1:
        raise ValueError("instances have different recurrences")
    s2 = orbit_stats(inst2, m2)
    if s2.rho != s2.tau:
        raise ValueError(f"second orbit has rho = {s2.rho} but tau = {s2.tau}")
    p1 = period_residues(inst1, m1)
    tau1, tau2 = len(p1), s2.tau
    d = gcd(tau1, tau2)
    predicted = (tau2 // d) * sum(class_counts(p1, d).values())
    x0 = crt_pair(inst1.x0, m1, inst2.x0, m2)
    x1 = crt_pair(inst1.x1, m1, inst2.x1, m2)
    return Combined(RecurrenceInstance(inst1.a1, x0, x1), m1 * m2, predicted, tau1, tau2, d)
