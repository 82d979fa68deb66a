"""Command-line front end.

Exit codes: 0 success, 1 verification failure (or a mathematical error such
as a non-member element), 2 usage or syntax error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import bases, cluster, quivergr, seeds
from .bases import NotInAlgebra
from .expr import ExprSyntaxError, evaluate
from .qtorus import TorusElem
from .verify import SUITES, Bounds, UnknownSuite, run_verify


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _pair(text: str) -> tuple[int, int]:
    vals = _int_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected two integers a,b, got {text!r}")
    return vals[0], vals[1]


def _interval(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an interval A..B, got {text!r}")


def _emit(obj, as_json: bool, text: str | None = None) -> None:
    if as_json:
        print(json.dumps(obj.to_json() if hasattr(obj, "to_json") else obj, sort_keys=True))
    else:
        print(text if text is not None else obj)


def _which_xvar(el: TorusElem, window: int = 12):
    for m in range(-window, window + 3):
        if cluster.xvar_rec(m) == el:
            return m
    return None


def cmd_xvar(args) -> int:
    _emit(cluster.xvar_rec(args.m), args.json)
    return 0


def cmd_cheb(args) -> int:
    if args.n < 0:
        raise _UsageError("N must be nonnegative")
    _emit(bases.cheb_elem(args.family, args.n), args.json)
    return 0


def _load_element(args) -> TorusElem:
    if args.expr is not None:
        return evaluate(args.expr)
    with open(args.json_file) as fh:
        return TorusElem.from_json(json.load(fh))


def cmd_expand(args) -> int:
    out = bases.expand_in_basis(_load_element(args), args.family, args.primed)
    _emit(out, args.as_json)
    return 0


def cmd_positivity(args) -> int:
    e = bases.expand_in_basis(evaluate(args.expr), args.family)
    res = bases.is_positive(e, args.clusters)
    payload = {"positive": res.positive, "witness": None}
    if res.witness:
        m, ex, c = res.witness
        payload["witness"] = {"cluster": m, "e": list(ex), "coeff": c.to_json()}
    print(json.dumps(payload, sort_keys=True))
    return 0


def cmd_grcount(args) -> int:
    lam = quivergr.INF if args.lam in ("inf", "∞") else int(args.lam)
    res = quivergr.gr_poly_report(args.kind, args.n, args.e, args.primes, lam)
    print(
        json.dumps(
            {
                "kind": args.kind,
                "n": args.n,
                "e": list(args.e),
                "counts": {str(p): c for p, c in res.counts.items()},
                "poly": res.poly.to_json(),
                "poly_text": str(res.poly),
                "certified": res.certified,
            },
            sort_keys=True,
        )
    )
    return 0


def cmd_mutate(args) -> int:
    if any(k not in (1, 2) for k in args.steps):
        raise _UsageError("steps must be 1 or 2")
    out = []
    for sd in seeds.mutate_sequence(seeds.initial_seed(), args.steps):
        out.append(
            {
                "history": list(sd.history),
                "vars": [v.to_json() for v in sd.vars],
                "indices": [_which_xvar(v) for v in sd.vars],
            }
        )
    print(json.dumps(out, sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    bounds = Bounds(max_n=args.max_n, primes=tuple(args.primes) if args.primes else None, samples=args.samples)
    reports = run_verify(args.suite, bounds)
    if not isinstance(reports, list):
        reports = [reports]
    if args.json:
        print(json.dumps([r.to_json() for r in reports], sort_keys=True))
    else:
        for r in reports:
            status = "PASS" if r.passed else "FAIL"
            print(f"{status} {r.suite}: {r.cases} cases, {len(r.failures)} failures ({r.seconds:.2f}s)")
            for f in r.failures[:5]:
                print(f"  case {f.index} {json.dumps(f.inputs)}")
    return 0 if all(r.passed for r in reports) else 1


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kronq", description="Exact computations in the quantum Kronecker cluster algebra.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("xvar", help="Laurent expansion of the cluster variable X_M")
    s.add_argument("m", type=int, metavar="M")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_xvar)

    s = sub.add_parser("cheb", help="Chebyshev element evaluated at X_delta")
    s.add_argument("family", choices=("first", "second", "power"))
    s.add_argument("n", type=int, metavar="N")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_cheb)

    s = sub.add_parser("expand-in-basis", help="expand an element in the basis B, S or D")
    s.add_argument("--family", choices=bases.FAMILIES, default="B")
    s.add_argument("--primed", action="store_true")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--expr")
    src.add_argument("--json", dest="json_file", metavar="FILE")
    s.add_argument("--out-json", dest="as_json", action="store_true", help="print the expansion as JSON")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("positivity", help="check Laurent positivity in a range of clusters")
    s.add_argument("--expr", required=True)
    s.add_argument("--clusters", type=_interval, required=True, metavar="A..B")
    s.add_argument("--family", choices=bases.FAMILIES, default="B")
    s.set_defaults(func=cmd_positivity)

    s = sub.add_parser("grcount", help="count subrepresentations over F_p and interpolate")
    s.add_argument("--kind", choices=("preproj", "preinj", "regular"), required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--e", type=_pair, required=True, metavar="E1,E2")
    s.add_argument("--primes", type=_int_list, required=True)
    s.add_argument("--lam", default="1", help="eigenvalue for regular modules, or 'inf'")
    s.set_defaults(func=cmd_grcount)

    s = sub.add_parser("mutate", help="mutate the initial seed along a walk")
    s.add_argument("--steps", type=_int_list, required=True)
    s.set_defaults(func=cmd_mutate)

    s = sub.add_parser("verify", help="run a named verification suite")
    s.add_argument("suite", metavar="SUITE", help=f"one of {', '.join(SUITES)}, all")
    s.add_argument("--max-n", type=int)
    s.add_argument("--primes", type=_int_list)
    s.add_argument("--samples", type=int, default=50, help="random samples for bases-roundtrip")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_verify)
    return p


def _glue_intervals(argv: list[str]) -> list[str]:
    """Let ``--clusters -5..6`` through; argparse would read -5..6 as an option."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--clusters":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_glue_intervals(argv))
    try:
        return args.func(args)
    except ExprSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return 2
    except (_UsageError, UnknownSuite, ValueError, OSError, json.JSONDecodeError) as exc:
        if isinstance(exc, (NotInAlgebra, ArithmeticError)):
            print(f"error: {exc}", file=sys.stderr)
            return 1
        msg = f"unknown suite {exc.args[0]!r}" if isinstance(exc, UnknownSuite) else str(exc)
        print(f"usage error: {msg}", file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
