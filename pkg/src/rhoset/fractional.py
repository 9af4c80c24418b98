"""Fractional parts of xi * alpha**n with finitely many limit points.

Given a certificate (x0, x1, m) with no zero residue, write
x_n = c1*alpha**n - c2*beta**n and take xi = c1/m.  Then
xi*alpha**n = x_n/m + c2*beta**n/m, and since |beta| < 1 the fractional parts
accumulate exactly at the residues r/m of the orbit.

All arithmetic is exact: the rational part comes from the trace recurrence
and the vanishing part is bounded by a rational envelope for |beta|**n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, gcd

from .quadring import QuadInt, RingParams, surd_interval
from .recurrence import RecurrenceInstance, period_residues

ENVELOPE_BITS = 64
GRID_BITS = 256  # envelope values are rounded up onto this dyadic grid


@dataclass(frozen=True)
class QuadRational:
    """num / den with num in Z[alpha] and den >= 1, in lowest terms."""

    num: QuadInt
    den: int

    def __post_init__(self):
        if self.den == 0:
            raise ZeroDivisionError("zero denominator")
        g = gcd(gcd(self.num.x, self.num.y), self.den)
        if self.den < 0:
            g = -g
        if g not in (0, 1):
            object.__setattr__(self, "num", QuadInt(self.num.x // g, self.num.y // g, self.num.params))
            object.__setattr__(self, "den", self.den // g)

    @property
    def params(self) -> RingParams:
        return self.num.params

    def __mul__(self, other):
        if isinstance(other, QuadRational):
            return QuadRational(self.num * other.num, self.den * other.den)
        if isinstance(other, (QuadInt, int)):
            return QuadRational(self.num * other, self.den)
        return NotImplemented

    def __truediv__(self, k: int) -> QuadRational:
        return QuadRational(self.num, self.den * k)

    def conj(self) -> QuadRational:
        return QuadRational(self.num.conj(), self.den)

    def trace(self) -> Fraction:
        return Fraction(self.num.trace(), self.den)

    def sign(self) -> int:
        return self.num.sign()

    def is_zero(self) -> bool:
        return self.num.x == 0 and self.num.y == 0

    def interval(self, bits: int) -> tuple[Fraction, Fraction]:
        # (x + y*alpha)/den = (2x + a1*y + y*sqrt D) / (2 den)
        a1, x, y = self.params.a1, self.num.x, self.num.y
        return surd_interval(2 * x + a1 * y, y, 2 * self.den, self.params.D, bits)

    def __float__(self):
        lo, hi = self.interval(60)
        return float((lo + hi) / 2)

    def to_dict(self) -> dict:
        return {"x": str(self.num.x), "y": str(self.num.y), "den": str(self.den), "a1": self.params.a1}


@dataclass(frozen=True)
class XiData:
    xi: QuadRational
    c2: QuadRational
    instance: RecurrenceInstance  # after the optional sign flip
    m: int
    negated: bool
    predicted: tuple[Fraction, ...]


def binet_coefficients(inst: RecurrenceInstance) -> tuple[QuadRational, QuadRational]:
    """c1, c2 with x_n = c1*alpha**n - c2*beta**n."""
    params = RingParams(inst.a1)
    sd = params.sqrt_d  # 1/sqrt(D) = sqrt(D)/D
    c1 = QuadRational((inst.x1 - params.beta * inst.x0) * sd, params.D)
    c2 = QuadRational((inst.x1 - params.alpha * inst.x0) * sd, params.D)
    return c1, c2


def xi_from_certificate(cert) -> XiData:
    if cert.a1 < 1:
        raise ValueError("need a1 >= 1 so that alpha > 1 > |beta|")
    if not cert.nonzero:
        raise ValueError("certificate has a zero residue")
    inst = cert.instance
    negated = False
    c1, c2 = binet_coefficients(inst)
    if c1.sign() < 0:
        inst, negated = inst.negated(), True
        c1, c2 = binet_coefficients(inst)
    if c2.is_zero():
        raise ValueError("c2 = 0: the sequence is identically zero")
    residues = sorted(set(period_residues(inst, cert.m)))
    if 0 in residues:
        raise ValueError("orbit contains 0")
    return XiData(
        xi=c1 / cert.m,
        c2=c2 / cert.m,
        instance=inst,
        m=cert.m,
        negated=negated,
        predicted=tuple(Fraction(r, cert.m) for r in residues),
    )


@dataclass(frozen=True)
class FracPoint:
    n: int
    lo: Fraction
    hi: Fraction
    center: Fraction  # frac of the rational part x_n/m


@dataclass(frozen=True)
class FracOrbit:
    points: tuple[FracPoint, ...]
    n0: int
    conclusive: bool


def _beta_abs_upper(params: RingParams) -> Fraction:
    # |beta| = (sqrt D - a1)/2
    lo, hi = surd_interval(-params.a1, 1, 2, params.D, ENVELOPE_BITS)
    return hi


def _abs_upper(z: QuadRational) -> Fraction:
    lo, hi = z.interval(ENVELOPE_BITS)
    return max(abs(lo), abs(hi))


def _round_up(q: Fraction) -> Fraction:
    return Fraction(-((-q.numerator << GRID_BITS) // q.denominator), 1 << GRID_BITS)


def _exact_frac_interval(z: QuadRational, eps: Fraction) -> tuple[Fraction, Fraction]:
    if z.num.y == 0:
        v = Fraction(z.num.x, z.den)
        f = v - floor(v)
        return f, f
    bits = 64
    while True:
        lo, hi = z.interval(bits)
        if floor(lo) == floor(hi) and hi - lo < eps:
            k = floor(lo)
            return lo - k, hi - k
        bits *= 2


def frac_orbit(xi: QuadRational, a1: int, N: int, eps: float | Fraction) -> FracOrbit:
    """Enclosures of frac(xi * alpha**n) for n = 0..N.

    From n0 on the envelope of the conjugate part is below eps/2, and every
    enclosure is at most eps wide.
    """
    if N < 0:
        raise ValueError("horizon must be >= 0")
    params = xi.params
    if params.a1 != a1 or a1 < 1:
        raise ValueError("xi lives in a different field, or a1 < 1")
    eps = Fraction(str(eps)) if isinstance(eps, float) else Fraction(eps)
    conj = xi.conj()
    conj_sign = conj.sign()
    envelope = _abs_upper(conj)
    shrink = _beta_abs_upper(params)
    if not shrink < 1:
        raise ArithmeticError("envelope for |beta| is not below 1")

    n0 = 0
    b = envelope
    while b >= eps / 2:
        b = _round_up(b * shrink)
        n0 += 1

    t_prev, t_cur = xi.trace(), (xi * params.alpha).trace()
    b = envelope
    z = xi
    points = []
    for n in range(N + 1):
        center = t_prev - floor(t_prev)
        # xi*alpha^n = t_n - conj(xi)*beta^n, beta < 0
        err_sign = conj_sign * (-1 if n % 2 else 1)
        if z.num.y == 0:
            lo, hi = _exact_frac_interval(z, eps)
        elif center != 0 and b < min(center, 1 - center):
            lo, hi = (center - b, center) if err_sign > 0 else (center, center + b)
            if err_sign == 0:
                lo = hi = center
        else:
            lo, hi = _exact_frac_interval(z, eps)
        points.append(FracPoint(n, lo, hi, center))
        t_prev, t_cur = t_cur, a1 * t_cur + t_prev
        b = _round_up(b * shrink)
        z = z * params.alpha
    return FracOrbit(tuple(points), n0, N >= n0)


@dataclass(frozen=True)
class Cluster:
    value: Fraction
    count: int
    max_deviation: Fraction


@dataclass(frozen=True)
class LimitReport:
    xi: QuadRational
    k: int
    predicted: tuple[Fraction, ...]
    clusters: tuple[Cluster, ...]
    n0: int
    N: int
    eps: Fraction
    conclusive: bool
    passed: bool

    def to_dict(self) -> dict:
        return {
            "xi": self.xi.to_dict(),
            "k": self.k,
            "predicted": [str(v) for v in self.predicted],
            "clusters": [
                {"value": str(c.value), "count": c.count, "max_deviation": f"{float(c.max_deviation):.3e}"}
                for c in self.clusters
            ],
            "n0": self.n0,
            "N": self.N,
            "eps": str(self.eps),
            "conclusive": self.conclusive,
            "pass": self.passed,
        }


def verify_limit_points(cert, N: int = 300, eps: float | Fraction = 1e-8) -> LimitReport:
    data = xi_from_certificate(cert)
    orbit = frac_orbit(data.xi, cert.a1, N, eps)
    eps_q = Fraction(str(eps)) if isinstance(eps, float) else Fraction(eps)
    period = period_residues(data.instance, data.m)
    tau = len(period)
    predicted = data.predicted

    counts = {v: 0 for v in predicted}
    devs = {v: Fraction(0) for v in predicted}
    ok = orbit.conclusive
    for pt in orbit.points[orbit.n0 :]:
        mid = (pt.lo + pt.hi) / 2
        nearest = min(predicted, key=lambda v: abs(v - mid))
        expected = Fraction(period[pt.n % tau], data.m)
        dev = max(abs(pt.lo - nearest), abs(pt.hi - nearest))
        if nearest != expected or dev > eps_q:
            ok = False
        counts[nearest] += 1
        devs[nearest] = max(devs[nearest], dev)
    if any(c == 0 for c in counts.values()):
        ok = False
    clusters = tuple(Cluster(v, counts[v], devs[v]) for v in predicted if counts[v])
    return LimitReport(
        xi=data.xi,
        k=len(predicted),
        predicted=predicted,
        clusters=clusters,
        n0=orbit.n0,
        N=N,
        eps=eps_q,
        conclusive=orbit.conclusive,
        passed=ok and len(clusters) == cert.target,
    )
