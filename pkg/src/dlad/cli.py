"""Command-line front end.

Three subcommands: ``classes`` emits a JSON-lines census of geometric classes
at a bounded denominator, ``centralizer`` prints the stabilizer decomposition
report for one element, and ``check`` runs one of the named verification
suites.  All numeric input is exact (fraction strings, never floats), and
identical invocations produce byte-identical output.

Exit codes: 0 when everything passed, 1 when a check failed or a standing
hypothesis was violated (the report says which), 2 for configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .centralizer import verify_semidirect
from .errors import (
    ConfigError,
    DenominatorNotSplit,
    DladError,
    HypothesisViolated,
    NotStable,
)
from .matmodel import crosscheck_suite, verify_graph_auto, verify_prop21
from .rational import (
    class_stable,
    cor32_check,
    enumerate_geom_classes,
    rem24_check,
    scenario_search,
    theorem_b_check,
)
from .torus import AdTorusElem
from .weyl import ExtElem, SignedPerm, gamma

CHECK_NAMES = ("prop21", "graphauto", "thmA", "thmB", "cor32", "rem24",
               "crosscheck", "scenario")

__all__ = ["main", "build_parser"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_power(q: int) -> tuple[int, int]:
    p = next((d for d in range(2, q + 1) if q % d == 0), None)
    if p is None:
        raise ConfigError(f"--q must be a prime power, got {q}")
    a, m = 0, q
    while m % p == 0:
        m //= p
        a += 1
    if m != 1:
        raise ConfigError(f"--q must be a prime power, got {q}")
    return p, a


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="dlad",
        description="Centralizers of semisimple torus elements in adjoint "
                    "type D: censuses, component groups, and checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    def std(sp):
        sp.add_argument("--rank", type=int, default=4, metavar="L",
                        help="rank l of the type-D group (default 4)")
        sp.add_argument("--p", type=int, help="odd prime characteristic")
        sp.add_argument("--q", type=int,
                        help="Frobenius power p^a (implies --p)")
        sp.add_argument("--denom", type=int, metavar="N",
                        help="denominator bound for censuses")
        sp.add_argument("--x", help="torus element, e.g. 0,1/4,1/2,3/4")
        sp.add_argument("--twist",
                        help='Weyl twist of the Frobenius, e.g. '
                             '"perm=[2,1,3,4];flips={}"')
        sp.add_argument("--gamma", action="store_true",
                        help="compose the Frobenius with the graph automorphism")
        sp.add_argument("--k", type=int, default=1,
                        help="exponent parameter (F = F0^2k where used)")
        sp.add_argument("--seed", type=int, default=0,
                        help="seed for randomized suites")
        sp.add_argument("--format", choices=("json", "tsv"), default="json")
        sp.add_argument("--bound", type=int,
                        help="search size cap (also env DLAD_MAX_ORBIT)")

    std(sub.add_parser("classes", help="census of geometric classes"))
    std(sub.add_parser("centralizer", help="stabilizer decomposition at --x"))
    chk = sub.add_parser("check", help="run a named verification suite")
    chk.add_argument("which", choices=CHECK_NAMES)
    std(chk)
    return ap


def _resolve_p(args, need_q: bool = False) -> tuple[int, int]:
    """The pair (p, a) from --p/--q, validated."""
    if args.q is not None:
        p, a = _prime_power(args.q)
        if args.p is not None and args.p != p:
            raise ConfigError(f"--p {args.p} does not divide --q {args.q}")
    elif args.p is not None:
        if need_q:
            raise ConfigError("this command needs --q")
        p, a = args.p, 1
    else:
        raise ConfigError("need --p or --q")
    if p == 2 or not _is_prime(p):
        raise ConfigError(f"characteristic must be an odd prime, got {p}")
    return p, a


def _rank(args) -> int:
    if args.rank < 4:
        raise ConfigError(f"--rank must be at least 4, got {args.rank}")
    return args.rank


def _frobenius(args, l: int, a: int) -> ExtElem:
    v = SignedPerm.identity(l)
    if args.twist:
        try:
            v = SignedPerm.parse(args.twist)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if v.rank != l:
            raise ConfigError(f"--twist has rank {v.rank}, expected {l}")
    if args.gamma:
        v = v * gamma(l)
    return ExtElem(v, a)


def _parse_x(args, p: int) -> AdTorusElem:
    if not args.x:
        raise ConfigError("this command needs --x")
    try:
        return AdTorusElem.parse(args.x, p)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _emit_report(rec: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(rec, sort_keys=True))
        return
    items = rec.get("items") or rec.get("checks") or {}
    for k in sorted(items):
        print(f"{k}\t{'pass' if items[k] else 'fail'}")
    print(f"verdict\t{rec.get('verdict', '')}")


def _cmd_classes(args) -> int:
    p, a = _resolve_p(args)
    if args.denom is None:
        raise ConfigError("classes needs --denom")
    l = _rank(args)
    g = ExtElem(gamma(l), 0)
    f0 = ExtElem(SignedPerm.identity(l), a) if args.q is not None else None
    records = []
    for gc in enumerate_geom_classes(l, args.denom, p, args.bound):
        rec = gc.to_json()
        rec["gamma_stable"] = class_stable(gc.rep, g, p)
        if f0 is not None:
            rec["f0_stable"] = class_stable(gc.rep, f0, p)
        records.append(rec)
    if args.format == "json":
        for rec in records:
            print(json.dumps(rec, sort_keys=True))
    else:
        cols = ["x", "orbit_size", "a_order", "gamma_stable"]
        if f0 is not None:
            cols.append("f0_stable")
        print("\t".join(cols))
        for rec in records:
            print("\t".join(str(rec[c]) for c in cols))
    return 0


def _cmd_centralizer(args) -> int:
    p, a = _resolve_p(args)
    x = _parse_x(args, p)  # the element fixes the rank; --rank is not needed
    report = verify_semidirect(x, p, f0_exponent=a, bound=args.bound)
    _emit_report(report.to_json(), args.format)
    return 0 if report.passed else 1


def _census_xs(args, p: int) -> list[AdTorusElem]:
    if args.x:
        return [_parse_x(args, p)]
    N = args.denom if args.denom is not None else 8
    return [gc.rep
            for gc in enumerate_geom_classes(_rank(args), N, p, args.bound)]


def _cmd_check(args) -> int:
    which = args.which

    if which in ("prop21", "graphauto"):
        if args.q is None:
            raise ConfigError(f"check {which} needs --q")
        p, a = _resolve_p(args)
        if args.rank not in (4, 5):
            raise ConfigError("matrix suites support --rank 4 or 5")
        if args.q > 9:
            raise ConfigError("matrix suites support --q up to 9")
        if which == "prop21":
            report = verify_prop21(args.rank, args.q, seed=args.seed)
        else:
            report = verify_graph_auto(args.rank, args.q, seed=args.seed)
        _emit_report(report.to_json(), args.format)
        return 0 if report.passed else 1

    if which == "crosscheck":
        p, a = _resolve_p(args)
        report = crosscheck_suite(
            _rank(args), p, max_den=args.denom if args.denom else 16,
            seed=args.seed)
        _emit_report(report.to_json(), args.format)
        return 0 if report.passed else 1

    if which == "scenario":
        p, a = _resolve_p(args, need_q=True)
        findings = scenario_search(_rank(args), args.q, args.denom, args.bound)
        ok = bool(findings) and all(f.report.passed for f in findings)
        rec = {
            "check": "scenario",
            "count": len(findings),
            "findings": [f.to_json() for f in findings],
            "verdict": "pass" if ok else "fail",
        }
        if args.format == "json":
            print(json.dumps(rec, sort_keys=True))
        else:
            print(f"findings\t{len(findings)}")
            print(f"verdict\t{rec['verdict']}")
        return 0 if ok else 1

    if which == "thmB":
        p, a = _resolve_p(args, need_q=True)
        x = _parse_x(args, p)
        report = theorem_b_check(x, _frobenius(args, x.rank, a), p, args.bound)
        _emit_report(report.to_json(), args.format)
        return 0 if report.passed else 1

    if which == "cor32":
        p, a = _resolve_p(args, need_q=True)
        x = _parse_x(args, p)
        report = cor32_check(x, _frobenius(args, x.rank, a), args.k, p,
                             args.bound)
        _emit_report(report.to_json(), args.format)
        return 0 if report.passed else 1

    # thmA and rem24 sweep the census unless --x narrows them to one element
    p, a = _resolve_p(args)
    ok = True
    for x in _census_xs(args, p):
        if which == "thmA":
            rec = verify_semidirect(x, p, f0_exponent=a, bound=args.bound)
        else:
            rec = rem24_check(x, p, f0_exponent=a, bound=args.bound)
        ok &= rec.passed
        _emit_report(rec.to_json(), args.format)
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "classes":
            return _cmd_classes(args)
        if args.command == "centralizer":
            return _cmd_centralizer(args)
        return _cmd_check(args)
    except (HypothesisViolated, NotStable) as exc:
        print(json.dumps({"verdict": "hypothesis_violated",
                          "reason": str(exc)}, sort_keys=True))
        return 1
    except DenominatorNotSplit as exc:
        msg = str(exc)
        if exc.suggested_degree:
            msg += f" (try extension degree {exc.suggested_degree})"
        print(f"dlad: {msg}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"dlad: {exc}", file=sys.stderr)
        return 2
    except DladError as exc:
        print(f"dlad: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
