"""Command line front end.

Exit codes: 0 ok, 1 verification mismatch, 2 mathematically impossible
request, 3 factoring budget exhausted, 4 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .constructor import construct, nonzero_possible
from .errors import BudgetExceeded, ConstructionError, ImpossibleNonzero, Unrepresentable
from .fractional import verify_limit_points
from .intmath import DEFAULT_BUDGET, DEFAULT_SEED
from .lehmer import (
    cyclotomic_num,
    guarantee_high_primdiv,
    guarantee_odd_primdiv,
    high_primitive_divisor,
    lehmer_companion,
    lehmer_term,
    primitive_divisors,
)
from .quadring import RingParams, ord_alpha2, ord_alpha_beta, split_type
from .recurrence import RecurrenceInstance, orbit_stats

EXIT_OK, EXIT_MISMATCH, EXIT_IMPOSSIBLE, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def parse_range(text: str) -> list[int]:
    """'1:60' (inclusive), '-5:5', '3' or '1,2,7'."""
    out: list[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ":" in part[1:]:
                i = part.index(":", 1)
                lo, hi = int(part[:i]), int(part[i + 1 :])
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None
    if not out:
        raise UsageError(f"empty range {text!r}")
    return out


def _emit(obj: dict, as_json: bool, out=None):
    out = out or sys.stdout
    if as_json:
        print(json.dumps(obj), file=out)
        return
    for k, v in obj.items():
        if isinstance(v, list):
            v = " ".join(json.dumps(t) if isinstance(t, dict) else str(t) for t in v)
        elif isinstance(v, dict):
            v = json.dumps(v)
        print(f"{k}\t{v}", file=out)


def _wants_json(args) -> bool:
    return args.json or args.format == "json"


def cmd_construct(args) -> int:
    cert = construct(args.a1, args.n, args.nonzero, budget=args.budget, seed=args.seed)
    if not cert.recheck():
        print("certificate failed re-simulation", file=sys.stderr)
        return EXIT_MISMATCH
    _emit(cert.to_dict(), _wants_json(args))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.m < 1:
        raise UsageError("m must be >= 1")
    s = orbit_stats(RecurrenceInstance(args.a1, args.x0, args.x1), args.m)
    _emit(
        {
            "a1": args.a1,
            "m": str(args.m),
            "tau": s.tau,
            "rho": s.rho,
            "residues": [str(r) for r in s.residues],
            "nonzero": s.nonzero,
        },
        _wants_json(args),
    )
    return EXIT_OK


def _sweep_cell(a1: int, n: int, nonzero: bool, budget: int, seed: int) -> dict:
    row = {"a1": a1, "n": n, "m": "", "tau": "", "rho": "", "nonzero": "", "path": "", "status": ""}
    expect_ok = (n <= 2 if a1 == 0 else True) and (not nonzero or nonzero_possible(a1, n))
    try:
        cert = construct(a1, n, nonzero, budget=budget, seed=seed)
    except (ImpossibleNonzero, Unrepresentable) as exc:
        row["path"] = type(exc).__name__
        row["status"] = "expected" if not expect_ok else "FAIL"
        return row
    except BudgetExceeded as exc:
        row["path"] = f"BudgetExceeded@{exc.index}"
        row["status"] = "FAIL"
        return row
    except ConstructionError as exc:
        row["path"] = f"{type(exc).__name__}: {exc}"
        row["status"] = "FAIL"
        return row
    good = expect_ok and cert.recheck() and cert.target == n and (cert.nonzero or not nonzero)
    row.update(
        m=str(cert.m),
        tau=cert.tau,
        rho=cert.rho,
        nonzero=cert.nonzero,
        path=cert.path.tag,
        status="ok" if good else "FAIL",
    )
    return row


SWEEP_COLUMNS = ("a1", "n", "m", "tau", "rho", "nonzero", "path", "status")


def cmd_sweep(args) -> int:
    a1s, ns = parse_range(args.a1), parse_range(args.n)
    cells = [(a1, n) for a1 in a1s for n in ns]
    call = [(a1, n, args.nonzero, args.budget, args.seed) for a1, n in cells]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_sweep_cell, *zip(*call)))
    else:
        rows = [_sweep_cell(*c) for c in call]
    as_json = _wants_json(args)
    if not as_json:
        print("\t".join(SWEEP_COLUMNS))
    for row in rows:
        if as_json:
            print(json.dumps(row))
        else:
            print("\t".join(str(row[c]) for c in SWEEP_COLUMNS))
    failures = sum(r["status"] == "FAIL" for r in rows)
    print(f"# cells={len(rows)} failures={failures}", file=sys.stderr)
    return EXIT_MISMATCH if failures else EXIT_OK


def cmd_lehmer(args) -> int:
    params = RingParams(args.a1)
    obj = {"a1": args.a1, "n": args.n, "lehmer": str(lehmer_term(params, args.n))}
    if args.n % 2:
        obj["companion"] = str(lehmer_companion(params, args.n))
    if args.n >= 3:
        obj["cyclotomic"] = str(cyclotomic_num(params, args.n))
    if _wants_json(args):
        _emit(obj, True)
    else:
        print(obj["lehmer"])
    return EXIT_OK


def cmd_primdiv(args) -> int:
    params = RingParams(args.a1)
    rep = primitive_divisors(params, args.n, args.budget, args.seed)
    try:
        high = high_primitive_divisor(params, args.n, args.budget, args.seed)
        high_s = f"{high[0]}^{high[1]}" if high else "none"
    except BudgetExceeded:
        high_s = "unknown"
    odd = rep.odd_primitive
    obj = {
        "a1": args.a1,
        "n": args.n,
        "phi_n": str(rep.phi_n),
        "primitive": [f"{p}^{e}" for p, e in rep.primitive],
        "odd": [f"{p}^{e}" for p, e in odd] if odd else ("unknown" if rep.unfactored > 1 else "none"),
        "high": high_s,
        "residual": str(rep.residual),
        "complete": rep.complete,
        "guaranteed_odd": guarantee_odd_primdiv(params, args.n),
        "guaranteed_high": guarantee_high_primdiv(params, args.n),
    }
    _emit(obj, _wants_json(args))
    return EXIT_OK


def cmd_order(args) -> int:
    params = RingParams(args.a1)
    o = ord_alpha_beta(params, args.p, args.v)
    c = ord_alpha2(params, args.p, args.v)
    obj = {
        "a1": args.a1,
        "p": str(args.p),
        "v": args.v,
        "kind": split_type(params, args.p).value,
        "ord_alpha": o.a,
        "ord_beta": o.b,
        "ord_alpha2": c,
    }
    if o.alpha_root is not None:
        obj["alpha_root"] = str(o.alpha_root)
    _emit(obj, _wants_json(args))
    return EXIT_OK


def cmd_frac(args) -> int:
    if not 0 < args.eps < 1:
        raise UsageError("eps must lie in (0, 1)")
    if args.a1 < 1:
        raise UsageError("frac needs a1 >= 1")
    if args.a1 == 1 and args.k < 4:
        raise UsageError("a1 = 1 is supported for k >= 4 only")
    cert = construct(args.a1, args.k, True, budget=args.budget, seed=args.seed)
    rep = verify_limit_points(cert, args.N, Fraction(str(args.eps)))
    obj = rep.to_dict()
    obj["m"] = str(cert.m)
    _emit(obj, _wants_json(args))
    return EXIT_OK if rep.passed else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="rho iteration cap")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    parser = _Parser(prog="rhoset", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("construct", parents=[common], help="certificate with exactly n residues")
    p.add_argument("--a1", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--nonzero", action="store_true", help="require all residues nonzero")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="simulate an orbit")
    p.add_argument("--a1", type=int, required=True)
    p.add_argument("--x0", type=int, required=True)
    p.add_argument("--x1", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="construct over ranges of a1 and n")
    p.add_argument("--a1", default="-5:5")
    p.add_argument("--n", default="1:60")
    p.add_argument("--nonzero", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("lehmer", parents=[common], help="Lehmer term ell_n")
    p.add_argument("--a1", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_lehmer)

    p = sub.add_parser("primdiv", parents=[common], help="primitive divisors of ell_n")
    p.add_argument("--a1", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_primdiv)

    p = sub.add_parser("order", parents=[common], help="orders of alpha, beta, alpha^2 mod p^v")
    p.add_argument("--a1", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--v", type=int, default=1)
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("frac", parents=[common], help="limit points of frac(xi alpha^n)")
    p.add_argument("--a1", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--N", type=int, default=300)
    p.add_argument("--eps", type=float, default=1e-8)
    p.set_defaults(func=cmd_frac)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "budget", 1) < 1:
        print("rhoset: error: budget must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"rhoset: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConstructionError as exc:
        print(f"rhoset: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"rhoset: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
