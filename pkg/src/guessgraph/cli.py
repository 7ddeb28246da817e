"""Command-line front end; every command prints one JSON report on stdout.

Exit codes: 0 success, 2 invalid input, 3 resource cap, 4 a certificate
failed re-validation.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from .cache import ResultCache, default_cache_path
from .entropy import EntropyLPError, build_lp, dual_certifies, solve_lp, to_lp_format
from .extremal import (
    InconsistencyError,
    SearchConfig,
    check_monFgn,
    code_size,
    ex_search,
    extremal_construction,
    forbidden_order_bound,
    is_gn_saturated,
    minimal_forbidden_family,
    sat_search,
    saturation_construction,
    spectrum_construction,
)
from .graphs import Graph, GraphError, decode_graph6, encode_graph6, parse_edge_list
from .guessing import GuessingInstance, ResourceCapError, max_code
from .invariants import gn_bounds, is_clique_cover, is_independent_set

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_INCONSISTENT = 0, 2, 3, 4

log = logging.getLogger("guessgraph")


def rational(x) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator, "float": float(x)}


def read_graph(arg: str) -> Graph:
    """graph6 string, path to a graph6 / edge-list file, or an inline edge list."""
    text = arg
    if os.path.exists(arg):
        text = Path(arg).read_text()
    stripped = text.strip()
    if any(ch.isspace() for ch in stripped) or ";" in stripped or stripped.isdigit():
        return parse_edge_list(stripped)
    return decode_graph6(stripped)


def _config(args) -> SearchConfig:
    cache = None if args.no_cache else ResultCache(args.cache or default_cache_path())
    return SearchConfig(
        enumeration_cap=args.enum_cap,
        coloring_cap=args.coloring_cap,
        cache=cache,
        progress=args.verbose,
    )


def _report(command: str, graph: Graph | None, params: dict, results: dict, certificates: dict | None = None) -> dict:
    return {
        "command": command,
        "graph": encode_graph6(graph) if graph is not None else None,
        "parameters": params,
        "results": results,
        "certificates": certificates or {},
    }


def cmd_gn(args) -> dict:
    g = read_graph(args.graph)
    config = _config(args)
    t = code_size(g, args.s, config)
    b = gn_bounds(g)
    certs = {
        "independent_set": b.independent_set,
        "clique_cover": b.clique_cover,
        "matching": [list(e) for e in b.matching],
    }
    if not is_independent_set(g, b.independent_set) or not is_clique_cover(g, b.clique_cover):
        raise InconsistencyError("bound certificates failed re-validation")
    if args.witness:
        code = max_code(GuessingInstance(g, args.s, args.coloring_cap))
        if code.size != t or not code.is_valid(g):
            raise InconsistencyError("witness code failed re-validation")
        certs["code"] = [list(w) for w in code.words]
    results = {
        "n": g.n,
        "m": g.m,
        "t": t,
        "gn": {"t": t, "s": args.s, "float": math.log(t, args.s)},
        "bounds": {k: v for k, v in b.as_dict().items() if k not in certs},
    }
    return _report("gn", g, {"s": args.s}, results, certs)


def cmd_entropy(args) -> dict:
    g = read_graph(args.graph)
    model = build_lp(g)
    if args.lp_dump:
        Path(args.lp_dump).write_text(to_lp_format(model))
    sol = solve_lp(model)
    if not dual_certifies(model, sol.dual, sol.optimum):
        raise InconsistencyError("dual certificate failed re-validation")
    results = {
        "optimum": rational(sol.optimum),
        "raw_variables": model.num_raw_variables,
        "reduced_variables": len(model.variables),
        "rows": len(model.rows),
        "pivots": sol.pivots,
        "family_counts": model.family_counts,
    }
    certs = {"entropy_vector": sol.certificate.as_dict(), "dual": [str(y) for y in sol.dual]}
    return _report("entropy", g, {}, results, certs)


def _search_report(name: str, res, args) -> dict:
    results = {"value": res.value, "family": res.family, "classes_checked": res.classes_checked}
    params = {"n": args.n, "s": args.s, "a": rational(args.a)}
    return _report(name, None, params, results)


def cmd_ex(args) -> dict:
    return _search_report("ex", ex_search(args.n, args.s, args.a, _config(args)), args)


def cmd_sat(args) -> dict:
    return _search_report("sat", sat_search(args.n, args.s, args.a, _config(args)), args)


def cmd_check_saturated(args) -> dict:
    g = read_graph(args.graph)
    report = is_gn_saturated(g, args.s, args.a, exact=not args.bounds_only, config=_config(args))
    if not report.validate():
        raise InconsistencyError("saturation certificates failed re-validation")
    data = report.as_dict()
    certs = {"below_certificate": data.pop("below_certificate"), "per_nonedge": data.pop("per_nonedge")}
    return _report("check-saturated", g, {"s": args.s, "a": rational(args.a), "exact": not args.bounds_only}, data, certs)


def cmd_construct(args) -> dict:
    if args.kind == "extremal":
        g = extremal_construction(args.n, args.a)
    elif args.kind == "kstar":
        g = saturation_construction(args.n, int(args.a))
    else:
        if args.b is None:
            raise ValueError("--b is required for the spectrum construction")
        g = spectrum_construction(args.n, int(args.a), args.b)
    params = {"kind": args.kind, "n": args.n, "a": rational(args.a), "b": args.b}
    return _report("construct", g, params, {"graph6": encode_graph6(g), "n": g.n, "m": g.m})


def cmd_family(args) -> dict:
    config = _config(args)
    fam = minimal_forbidden_family(args.s, args.a, args.ncap, config)
    results = {
        "members": fam.members,
        "member_sizes": [[g.n, g.m] for g in fam.graphs()],
        "n_cap": fam.n_cap,
        "complete": fam.complete,
    }
    if Fraction(args.a).denominator == 1:
        results["order_bound"] = str(forbidden_order_bound(args.s, int(args.a)))
    if args.check_against is not None:
        verdict = check_monFgn(args.s, args.check_against, args.a, args.ncap, config)
        results["monotonicity"] = {"a": rational(args.check_against), "holds": verdict.holds, "witnesses": verdict.witnesses, "missing": verdict.missing}
    return _report("family", None, {"s": args.s, "a": rational(args.a), "ncap": args.ncap}, results)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", help="result cache path (default $GN_CACHE or ./gncache.jsonl)")
    common.add_argument("--no-cache", action="store_true", help="bypass the result cache")
    common.add_argument("--enum-cap", type=int, default=8, help="largest n to enumerate")
    common.add_argument("--coloring-cap", type=int, default=2**20, help="largest s^n to search")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    p = argparse.ArgumentParser(prog="guessgraph", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("gn", parents=[common], help="exact guessing number and bounds")
    q.add_argument("graph")
    q.add_argument("--s", type=int, default=2)
    q.add_argument("--witness", action="store_true", help="include a maximum code")
    q.set_defaults(func=cmd_gn)

    q = sub.add_parser("entropy", parents=[common], help="entropy LP upper bound")
    q.add_argument("graph")
    q.add_argument("--lp-dump", help="write the LP in CPLEX LP format to this path")
    q.set_defaults(func=cmd_entropy)

    for name, func, helptext in (("ex", cmd_ex, "extremal search"), ("sat", cmd_sat, "saturation search")):
        q = sub.add_parser(name, parents=[common], help=helptext)
        q.add_argument("--n", type=int, required=True)
        q.add_argument("--s", type=int, default=2)
        q.add_argument("--a", type=Fraction, required=True)
        q.set_defaults(func=func)

    q = sub.add_parser("check-saturated", parents=[common], help="saturation verdict with certificates")
    q.add_argument("graph")
    q.add_argument("--s", type=int, default=2)
    q.add_argument("--a", type=Fraction, required=True)
    q.add_argument("--bounds-only", action="store_true", help="cheap certificates only; may answer null")
    q.set_defaults(func=cmd_check_saturated)

    q = sub.add_parser("construct", parents=[common], help="extremal, K*_{a,a} or spectrum graphs")
    q.add_argument("--kind", choices=["extremal", "kstar", "spectrum"], required=True)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--a", type=Fraction, required=True)
    q.add_argument("--b", type=int)
    q.add_argument("--format", choices=["json", "graph6"], default="json")
    q.set_defaults(func=cmd_construct)

    q = sub.add_parser("family", parents=[common], help="minimal forbidden subgraphs")
    q.add_argument("--s", type=int, default=2)
    q.add_argument("--a", type=Fraction, required=True)
    q.add_argument("--ncap", type=int, required=True)
    q.add_argument("--check-against", type=Fraction, help="also check containment of this smaller threshold's family")
    q.set_defaults(func=cmd_family)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr, format="%(message)s")
    start = time.perf_counter()
    try:
        report = args.func(args)
    except (GraphError, ValueError, ZeroDivisionError) as exc:
        print(json.dumps({"error": str(exc), "exit_code": EXIT_INPUT}))
        return EXIT_INPUT
    except ResourceCapError as exc:
        print(json.dumps({"error": str(exc), "exit_code": EXIT_CAP}))
        return EXIT_CAP
    except (InconsistencyError, EntropyLPError) as exc:
        print(json.dumps({"error": str(exc), "exit_code": EXIT_INCONSISTENT}))
        return EXIT_INCONSISTENT
    if args.command == "construct" and args.format == "graph6":
        print(report["graph"])
        return EXIT_OK
    report["timing"] = {"seconds": round(time.perf_counter() - start, 6)}
    print(json.dumps(report, sort_keys=True))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
