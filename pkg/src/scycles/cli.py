"""Command-line front end.

Every command prints human-readable text by default.  With ``--records`` it prints
one JSON object per line with keys in a fixed order: ``command``, ``inputs``, then
the result fields.  Exit status is 0 on success, 1 on a domain error and 2 on a
usage or parse error.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import dynamics, equivalence, families, projline, ratmap, sarith
from .parsing import parse_map
from .projline import ProjPoint, parse_point


def _point(text: str) -> ProjPoint:
    try:
        return parse_point(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _map(text: str) -> ratmap.HomogMap:
    try:
        return parse_map(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad map {text!r}: {exc}") from None


def _primes(text: str) -> sarith.SPrimeSet:
    try:
        return sarith.parse_primes(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad prime set {text!r}: {exc}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from None


def _coeffs(text: str) -> tuple[Fraction, ...]:
    return tuple(_rational(t) for t in text.split(","))


def _jsonable(v):
    if isinstance(v, ProjPoint):
        return str(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return "inf" if v == float("inf") else v
    if isinstance(v, (sarith.SIdeal, equivalence.Mobius, ratmap.HomogMap, sarith.Factorization)):
        return str(v)
    if isinstance(v, sarith.SPrimeSet):
        return list(v.primes)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


# ---------------------------------------------------------------------------
# handlers: each returns a list of (inputs, result) dict pairs


def cmd_delta(a):
    d = projline.delta_p(a.P, a.Q, a.p)
    return [({"P": a.P, "Q": a.Q, "p": a.p}, {"delta": d})]


def cmd_ideal(a):
    I = projline.ideal_between(a.P, a.Q, a.s)
    return [({"P": a.P, "Q": a.Q, "S": a.s}, {"generator": I.generator, "factorization": sarith.factor(I.generator)})]


def cmd_reduction_map(a):
    phi = a.map
    res = ratmap.resultant(phi)
    return [
        (
            {"map": phi, "S": a.s},
            {
                "degree": phi.degree,
                "resultant": res,
                "bad_primes": sorted(ratmap.bad_primes(phi)),
                "good_reduction": ratmap.good_reduction_map(phi, a.s),
            },
        )
    ]


def cmd_reduction_tuple(a):
    ok, wit = projline.tuple_good_reduction(a.points, a.s)
    return [({"points": a.points, "S": a.s}, {"good_reduction": ok, "witnesses": [[p, list(ij)] for p, ij in wit]})]


def cmd_orbit(a):
    r = dynamics.orbit(a.map, a.point, max_steps=a.max_steps, height_cap=a.height_cap)
    return [
        (
            {"map": a.map, "point": a.point, "max_steps": a.max_steps, "height_cap": a.height_cap},
            {
                "outcome": r.outcome.value,
                "tail": r.tail,
                "cycle": r.cycle.points if r.cycle else None,
                "period": len(r.cycle) if r.cycle else None,
            },
        )
    ]


def cmd_periodic(a):
    pts, complete = dynamics.periodic_points(a.map, a.period, budget=a.budget)
    return [({"map": a.map, "period": a.period, "budget": a.budget}, {"points": pts, "complete": complete})]


def cmd_ledger(a):
    cyc = dynamics.verify_cycle(a.map, a.points, a.s)
    led = dynamics.cycle_ledger(cyc, a.s)
    rep = dynamics.check_distance_invariance(cyc, a.s)
    return [
        (
            {"map": a.map, "points": a.points, "S": a.s},
            {
                "n": led.n,
                "C": led.C,
                "u": {f"{j},{k}": v for (j, k), v in sorted(led.U.items())},
                "L": {f"{i},{j}": v for (i, j), v in sorted(led.L.items())},
                "ideals": {i: I.generator for i, I in led.ideals.items()},
                "reduced_ideals": {i: I.generator for i, I in led.reduced_ideals.items()},
                "distance_primes": list(rep.primes_checked),
                "distance_ok": rep.ok,
            },
        )
    ]


def cmd_normalize(a):
    cyc = dynamics.verify_cycle(a.map, a.points, a.s)
    nt = dynamics.normalized_tuple(cyc, a.s)
    return [({"map": a.map, "points": a.points, "S": a.s}, {"normalized": nt.points, "A": nt.A, "U": nt.U})]


def _split_tuples(tokens: list[str]) -> tuple[tuple[ProjPoint, ...], tuple[ProjPoint, ...]]:
    text = " ".join(tokens)
    if text.count(";") != 1:
        raise argparse.ArgumentTypeError("equiv expects two tuples separated by a single ';'")
    left, right = text.split(";")
    try:
        return projline.parse_tuple(left), projline.parse_tuple(right)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_equiv(a):
    tA, tB = a.tuples
    M = equivalence.tuples_equivalent(tA, tB, a.s)
    return [({"A": tA, "B": tB, "S": a.s}, {"equivalent": M is not None, "witness": M})]


def _read_tuples(path: str) -> list[tuple[ProjPoint, ...]]:
    out = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(projline.parse_tuple(line))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"{path}:{lineno}: {exc}") from None
    return out


def cmd_classify(a):
    classes = equivalence.classify(a.tuples, a.s)
    return [
        ({"file": a.file, "S": a.s}, {"class": k, "representative": c.representative, "size": len(c.members), "members": c.members})
        for k, c in enumerate(classes)
    ]


def cmd_thm2(a):
    if a.mode == "census":
        rows = families.ideal_census(a.n_max, budget=a.budget)
        return [
            (
                {"n_max": a.n_max, "budget": a.budget},
                {
                    "n": r.n,
                    "generator": r.generator,
                    "factorization": r.factorization,
                    "complete": r.complete,
                    "cumulative_primes": r.cumulative_primes,
                },
            )
            for r in rows
        ]
    if a.u is None:
        raise argparse.ArgumentTypeError("thm2 needs --u or the 'census' mode")
    f = families.build_family(a.u, a.s, strict=a.strict)
    return [
        (
            {"u": a.u, "S": a.s},
            {
                "degree": f.degree,
                "good_reduction": f.good_reduction,
                "bad_primes": sorted(ratmap.bad_primes(f.phi)),
                "triple": f.triple,
                "ideal1": f.ideal1.generator,
                "ideal2": f.ideal2.generator,
                "phi": f.phi,
            },
        )
    ]


def cmd_sunit(a):
    sols = sarith.solve_unit_eq(a.coeffs, a.s, a.box)
    return [
        (
            {"coeffs": a.coeffs, "S": a.s, "box": a.box},
            {
                "count": len(sols),
                "evertse_bound": sarith.evertse_bound(a.s.s),
                "solutions": [list(x.values) for x in sols],
                "degenerate": [x.degenerate for x in sols],
            },
        )
    ]


def cmd_bound(a):
    return [({"s": a.s_count}, {"ms_bound": dynamics.ms_bound(a.s_count)})]


# ---------------------------------------------------------------------------


def _text(v) -> str:
    v = _jsonable(v)
    if isinstance(v, list):
        return " ".join(_text(x) for x in v) if v else "-"
    if isinstance(v, dict):
        return ", ".join(f"{k}: {_text(x)}" for k, x in v.items()) or "-"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--records", action="store_true", help="emit JSON lines")
    with_s = argparse.ArgumentParser(add_help=False)
    with_s.add_argument("--s", type=_primes, default=sarith.EMPTY_S, help="comma-separated primes of S")

    parser = argparse.ArgumentParser(prog="scycles", description="cycles of rational maps with good reduction outside S")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, parents=(common,), **kw):
        p = sub.add_parser(name, parents=list(parents), **kw)
        p.set_defaults(fn=fn)
        return p

    p = add("delta", cmd_delta, help="p-adic logarithmic distance")
    p.add_argument("P", type=_point)
    p.add_argument("Q", type=_point)
    p.add_argument("--p", type=int, required=True)

    p = add("ideal", cmd_ideal, (common, with_s), help="ideal generated by the cross-determinant")
    p.add_argument("P", type=_point)
    p.add_argument("Q", type=_point)

    p = add("reduction-map", cmd_reduction_map, (common, with_s), help="resultant and bad primes of a map")
    p.add_argument("map", type=_map)

    p = add("reduction-tuple", cmd_reduction_tuple, (common, with_s), help="good reduction of a tuple")
    p.add_argument("points", type=_point, nargs="+")

    p = add("orbit", cmd_orbit, help="iterate a map from a point")
    p.add_argument("map", type=_map)
    p.add_argument("point", type=_point)
    p.add_argument("--max-steps", type=int, default=1000)
    p.add_argument("--height-cap", type=int, default=dynamics.DEFAULT_HEIGHT_CAP)

    p = add("periodic", cmd_periodic, help="rational points of period n")
    p.add_argument("map", type=_map)
    p.add_argument("--period", type=int, default=1)
    p.add_argument("--budget", type=int, default=sarith.DEFAULT_RHO_BUDGET)

    for name, fn, what in (("ledger", cmd_ledger, "cycle invariants"), ("normalize", cmd_normalize, "normal form of a cycle")):
        p = add(name, fn, (common, with_s), help=what)
        p.add_argument("map", type=_map)
        p.add_argument("points", type=_point, nargs="+")

    p = add("equiv", cmd_equiv, (common, with_s), help="PGL2(Z_S)-equivalence of two tuples: A ; B")
    p.add_argument("tokens", nargs="+")

    p = add("classify", cmd_classify, (common, with_s), help="partition a file of tuples into classes")
    p.add_argument("file")

    p = add("thm2", cmd_thm2, (common, with_s), help="the degree-4 family, or its ideal census")
    p.add_argument("mode", nargs="?", choices=["census"])
    p.add_argument("--u", type=_rational)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--budget", type=int, default=sarith.DEFAULT_RHO_BUDGET)

    p = add("sunit", cmd_sunit, (common, with_s), help="S-unit equation a1 x1 + ... = 1 in a box")
    p.add_argument("--coeffs", type=_coeffs, required=True)
    p.add_argument("--box", type=int, default=10, help="max |exponent| per prime")

    p = add("bound", cmd_bound, help="Morton-Silverman period bound")
    p.add_argument("--s-count", type=int, required=True)
    return parser


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "equiv":
            args.tuples = _split_tuples(args.tokens)
        elif args.command == "classify":
            args.tuples = _read_tuples(args.file)
        rows = args.fn(args)
    except argparse.ArgumentTypeError as exc:
        print(f"scycles {args.command}: error: {exc}", file=err)
        return 2
    except OSError as exc:
        print(f"scycles {args.command}: error: {exc}", file=err)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    for inputs, result in rows:
        if args.records:
            rec = {"command": args.command, "inputs": _jsonable(inputs)}
            rec.update(_jsonable(result))
            print(json.dumps(rec, ensure_ascii=False), file=out)
        else:
            for k, v in result.items():
                print(f"{k}: {_text(v)}", file=out)
            if len(rows) > 1:
                print(file=out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
