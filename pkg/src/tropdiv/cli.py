"""Command-line front end.

Subcommands: chain-new, reduce, rr-check, gp0, shape.  Exit codes:
0 success, 1 a checked mathematical property was falsified, 2 usage or
parse error, 3 an internal search/iteration cap was exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .chainbn import enumerate_tableaux, gp_rho_zero_experiment, shape_profile
from .errors import (GenericityError, GraphError, PreconditionError,
                     ReductionCapError, SearchCapError, TheoremViolation)
from .graph import (ChainOfLoops, MetricGraph, canonical_divisor,
                    check_genericity, default_generic_chain, make_chain)
from .reduce import riemann_roch_check, v_reduce
from .sampling import SplitMix64, random_divisor
from . import serialize as sz

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _emit(obj, out_path: str | None) -> None:
    text = sz.dumps(obj)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    with open(path) as fh:
        return json.load(fh)


def _load_chain_arg(args) -> ChainOfLoops:
    if args.lengths:
        return sz.chain_from_json(_load_json(args.lengths))
    return default_generic_chain(args.g)


def _parse_base(graph: MetricGraph, text: str):
    if ":" in text:
        edge_s, off_s = text.split(":", 1)
        return graph.point(int(edge_s), sz.rat_from_json(off_s))
    return graph.vertex_point(text)


def cmd_chain_new(args) -> int:
    chain = _load_chain_arg(args)
    if args.require_generic and not check_genericity(chain):
        raise GenericityError("chain lengths are not generic")
    obj = sz.chain_to_json(chain)
    obj["graph"] = sz.graph_to_json(chain.graph)
    obj["generic"] = check_genericity(chain)
    _emit(obj, args.out)
    return EXIT_OK


def cmd_reduce(args) -> int:
    graph = sz.graph_from_json(_load_json(args.graph))
    D = sz.divisor_from_json(graph, _load_json(args.divisor))
    base = _parse_base(graph, args.base)
    res = v_reduce(graph, D, base)
    _emit({
        "input": sz.divisor_to_json(graph, D),
        "base": sz.point_to_json(graph, base),
        "reduced": sz.divisor_to_json(graph, res.reduced),
        "witness": sz.plfunction_to_json(res.witness),
        "events": res.steps,
    }, args.out)
    return EXIT_OK


def cmd_rr_check(args) -> int:
    graph = sz.graph_from_json(_load_json(args.graph))
    g = graph.betti()
    rng = SplitMix64(args.seed)
    failures = []
    for t in range(args.trials):
        deg = rng.randint(-2, 2 * g)
        D = random_divisor(graph, rng, deg)
        ok, r1, r2 = riemann_roch_check(graph, D)
        if not ok:
            failures.append({
                "trial": t,
                "divisor": sz.divisor_to_json(graph, D),
                "rank": r1,
                "rank_adjoint": r2,
            })
    obj = {"trials": args.trials, "genus": g, "seed": args.seed,
           "failures": failures, "passed": not failures}
    if args.trials == 0:
        obj["warning"] = "zero trials requested; nothing was checked"
    _emit(obj, args.out)
    return EXIT_FALSIFIED if failures else EXIT_OK


def cmd_gp0(args) -> int:
    if args.lengths:
        chain = sz.chain_from_json(_load_json(args.lengths))
    else:
        chain = default_generic_chain(args.g)
    rows = args.g - args.d + args.r
    cols = args.r + 1
    rho = args.g - cols * rows
    if rho != 0:
        raise PreconditionError(f"rho(g,r,d) = {rho}, gp0 needs rho = 0")
    if rows <= 0 or rows * cols != args.g:
        raise PreconditionError("tableau shape is empty or does not match g")
    tableaux = enumerate_tableaux(rows, cols)
    if args.tableau != "all":
        tableaux = [tableaux[int(args.tableau)]]
    reports = []
    any_dependent = False
    for T in tableaux:
        rep = gp_rho_zero_experiment(T, chain)
        any_dependent |= (rep.verdict == "dependent")
        reports.append({
            "g": args.g, "r": args.r, "d": args.d,
            "tableau": [list(row) for row in T.entries],
            "verdict": rep.verdict,
            "elapsed_seconds": round(rep.elapsed, 3),
            "empty_cells": {f"{j},{k}": i
                            for (j, k), i in sorted(rep.empty_cell_table.items())},
        })
    _emit({"reports": reports}, args.out)
    return EXIT_FALSIFIED if any_dependent else EXIT_OK


def cmd_shape(args) -> int:
    chain = sz.chain_from_json(_load_json(args.graph))
    D = sz.divisor_from_json(chain.graph, _load_json(args.divisor))
    prof = shape_profile(D, chain)
    _emit({
        "cells": list(prof.cells),
        "bridges": list(prof.bridges),
        "wg_coeff": prof.wg_coeff,
        "empty_cells": list(prof.empty_cells()),
    }, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tropdiv",
        description="Exact divisor theory on metric graphs: reduction, rank, "
                    "tropical Riemann-Roch, and independence experiments on "
                    "chains of loops.")
    sub = p.add_subparsers(dest="cmd", required=True)

    pc = sub.add_parser("chain-new", help="construct a chain of loops")
    pc.add_argument("--g", type=int, required=True)
    pc.add_argument("--lengths", help="JSON chain description file")
    pc.add_argument("--require-generic", action="store_true")
    pc.add_argument("--out")
    pc.set_defaults(func=cmd_chain_new)

    pr = sub.add_parser("reduce", help="reduce a divisor at a base point")
    pr.add_argument("graph")
    pr.add_argument("divisor")
    pr.add_argument("--base", required=True,
                    help="vertex name or edge:offset (offset as p/q)")
    pr.add_argument("--out")
    pr.set_defaults(func=cmd_reduce)

    pq = sub.add_parser("rr-check", help="randomized Riemann-Roch identity check")
    pq.add_argument("graph")
    pq.add_argument("--trials", type=int, default=50)
    pq.add_argument("--seed", type=int, default=0)
    pq.add_argument("--out")
    pq.set_defaults(func=cmd_rr_check)

    pg = sub.add_parser("gp0", help="rho=0 independence experiments")
    pg.add_argument("--g", type=int, required=True)
    pg.add_argument("--r", type=int, required=True)
    pg.add_argument("--d", type=int, required=True)
    pg.add_argument("--lengths", help="JSON chain description file")
    pg.add_argument("--tableau", default="all", help="index or 'all'")
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("--out")
    pg.set_defaults(func=cmd_gp0)

    ps = sub.add_parser("shape", help="cell occupancy profile of a divisor")
    ps.add_argument("graph", help="chain JSON file")
    ps.add_argument("divisor")
    ps.add_argument("--out")
    ps.set_defaults(func=cmd_shape)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except TheoremViolation as e:
        sys.stderr.write(f"falsified: {e}\n")
        return EXIT_FALSIFIED
    except (ReductionCapError, SearchCapError) as e:
        sys.stderr.write(f"cap exceeded: {e}\n")
        return EXIT_CAP
    except (GraphError, GenericityError, PreconditionError, ValueError,
            KeyError, IndexError, OSError, json.JSONDecodeError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
