"""Command-line front end.

Exit status: 0 on success, 1 when any verdict is ``refuted``, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .certificates import certificate_to_json, check_certificate
from .corona import edge_corona, generalized_edge_corona, to_dot
from .edgelist import read_graph, render_edge_list
from .families import parse_family, standard_family
from .graph import Graph, GraphError
from .harness import ConfigError, FuzzConfig, dumps, run_fuzz_campaign
from .solvers import DEFAULT_BUDGET, Budget, solve
from .theorems import REFUTED, Instance, TheoremId, list_theorems, verify


class UsageError(Exception):
    pass


def _budget(args) -> Budget:
    nodes, ms = args.budget_nodes, args.budget_ms
    if nodes is None and ms is None:
        return DEFAULT_BUDGET
    try:
        return Budget(nodes, None if ms is None else ms / 1000)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _factors(args, m: int) -> list:
    if args.uniform_factor is not None and args.factor:
        raise UsageError("use either --factor (repeated) or --uniform-factor, not both")
    if args.uniform_factor is not None:
        return [read_graph(args.uniform_factor)] * m
    return [read_graph(f) for f in args.factor]


def cmd_gen(args, out) -> int:
    out.write(render_edge_list(standard_family(parse_family(args.family, args.seed))))
    return 0


def cmd_product(args, out) -> int:
    g = read_graph(args.graph)
    if args.uniform_factor is not None:
        cg = edge_corona(g, read_graph(args.uniform_factor))
    else:
        cg = generalized_edge_corona(g, _factors(args, g.m))
    out.write(to_dot(cg) if args.dot else render_edge_list(cg.graph))
    return 0


def cmd_solve(args, out) -> int:
    g = read_graph(args.graph)
    res = solve(g, args.invariant, _budget(args))
    out.write(dumps({
        "invariant": args.invariant,
        "value": res.value,
        "status": res.status,
        "lower": res.lower,
        "upper": res.upper,
        "nodes_explored": res.nodes_explored,
        "witness": certificate_to_json(res.witness),
        "witness_valid": check_certificate(g, res.witness),
    }) + "\n")
    return 0


def cmd_verify(args, out) -> int:
    g = read_graph(args.graph)
    factors = _factors(args, g.m)
    if not factors and TheoremId(args.theorem) is TheoremId.MATCHING_OF_COMPLETE:
        # the matching lemma is about G alone
        factors = [Graph(0)] * g.m
    verdict = verify(args.theorem, Instance(g, tuple(factors)), _budget(args))
    out.write(dumps(verdict.to_json()) + "\n")
    return 1 if verdict.status == REFUTED else 0


def cmd_fuzz(args, out) -> int:
    if args.config:
        with open(args.config) as fh:
            base = json.load(fh)
    else:
        base = {}
    overrides = {
        "master_seed": args.seed,
        "trials": args.trials,
        "theorems": args.theorem or None,
        "max_base_vertices": args.max_base,
        "max_factor_vertices": args.max_factor,
        "max_product_vertices": args.max_product,
        "budget_nodes": args.budget_nodes,
        "budget_ms": args.budget_ms,
        "workers": args.workers,
        "timing": args.timing or None,
    }
    base.update({k: v for k, v in overrides.items() if v is not None})
    cfg = FuzzConfig.from_json(base)
    report = run_fuzz_campaign(cfg)
    sink = open(args.out, "w") if args.out else out
    try:
        for line in report.lines():
            sink.write(line + "\n")
    finally:
        if args.out:
            sink.close()
    return 1 if report.refuted else 0


def cmd_list(args, out) -> int:
    for entry in list_theorems():
        out.write(dumps(entry) + "\n")
    return 0


def _add_budget(p):
    p.add_argument("--budget-nodes", type=int, default=None, help="search step limit")
    p.add_argument("--budget-ms", type=int, default=None, help="wall-clock limit in milliseconds")


def _add_factors(p, required=True):
    group = p.add_mutually_exclusive_group(required=required)
    group.add_argument("--factor", action="append", default=[], metavar="FILE", help="factor for the next edge of G, in edge order")
    group.add_argument("--uniform-factor", metavar="FILE", help="same factor on every edge")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coronalab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a standard family graph as an edge list")
    p.add_argument("--family", required=True, help="e.g. complete:4, complete-bipartite:2,3, random-tree:6, gnp:6,0.5")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("product", help="write G ◊ (H_1..H_m) as an edge list")
    p.add_argument("--graph", required=True)
    _add_factors(p)
    p.add_argument("--dot", action="store_true", help="Graphviz output instead of an edge list")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("solve", help="compute one invariant exactly")
    p.add_argument("--invariant", required=True, help="chromatic | kdist:<k> | independence | vertex-cover | domination | matching")
    p.add_argument("--graph", required=True)
    _add_budget(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check one theorem on one instance")
    p.add_argument("--theorem", required=True, choices=[t.value for t in TheoremId])
    p.add_argument("--graph", required=True)
    _add_factors(p, required=False)
    _add_budget(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("fuzz", help="seeded campaign; JSON Lines report")
    p.add_argument("--config", help="JSON file with FuzzConfig fields; flags override it")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--theorem", action="append", choices=[t.value for t in TheoremId])
    p.add_argument("--max-base", type=int)
    p.add_argument("--max-factor", type=int)
    p.add_argument("--max-product", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--timing", action="store_true", help="record elapsed_ms (breaks byte reproducibility)")
    p.add_argument("--out", help="write the report here instead of stdout")
    _add_budget(p)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("list", help="print the theorem catalog")
    p.set_defaults(func=cmd_list)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, GraphError, ConfigError, OSError, ValueError) as exc:
        print(f"coronalab {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
