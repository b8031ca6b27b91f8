"""Command-line front end: ``diffgames {mc,game,relation,dn,gen,check}``.

Every command writes one JSON document to stdout. Exit codes: 0 on success,
1 when a check suite finds a counterexample, 2 on usage, parse or IO errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import checks
from .difflocal import PRESETS, apply_coloring, dn_census
from .engine import SizeGuardError, model_check
from .games import GameKind, game_trace, winner
from .graph import GraphError, all_graphs_up_to, complement_of, generate, load_graph
from .logic import FormulaError, FormulaSyntaxError, load_formula, parse_formula
from .relations import STATS, components, greedy_mis, relation_graph


class UsageError(Exception):
    pass


def _emit(obj, args) -> None:
    if args.pretty:
        json.dump(obj, sys.stdout, indent=2, sort_keys=True)
    else:
        json.dump(obj, sys.stdout, sort_keys=True, separators=(",", ":"))
    sys.stdout.write("\n")


def _tuple(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertices, got {text!r}") from None


def cmd_mc(args) -> int:
    G = load_graph(args.graph)
    if args.expr is not None:
        phi = parse_formula(args.expr)
    elif args.formula is not None:
        phi = load_formula(args.formula)
    else:
        raise UsageError("give a formula file or --expr")
    STATS.pair_checks = 0
    verdict, diag = model_check(G, phi, args.engine)
    diag["pair_checks"] = STATS.pair_checks
    _emit(diag, args)
    return 0


def cmd_game(args) -> int:
    G = load_graph(args.graph)
    H = load_graph(args.other) if args.other else None
    if H is not None and args.kind != "ef":
        raise UsageError("--other is only meaningful for the EF game")
    if args.trace:
        t = game_trace(args.kind, G, args.a, args.b, args.rounds, H=H)
        _emit(t.to_json(), args)
    else:
        w = winner(args.kind, G, args.a, args.b, args.rounds, H=H)
        _emit({"kind": GameKind(args.kind).value, "rounds": args.rounds,
               "a": args.a, "b": args.b, "winner": w.value}, args)
    return 0


def cmd_relation(args) -> int:
    G = load_graph(args.graph)
    R = relation_graph(G, args.kind, args.rounds)
    out = R.to_json()
    out["components"] = components(R)
    out["greedy_mis"] = greedy_mis(R)
    _emit(out, args)
    return 0


def cmd_dn(args) -> int:
    G = load_graph(args.graph)
    if args.coloring:
        G = apply_coloring(G, args.coloring)
    elif args.preset:
        G = apply_coloring(G, PRESETS[args.preset](G))
    _emit(dn_census(G, args.r, args.rounds), args)
    return 0


def cmd_gen(args) -> int:
    if args.kind == "all_graphs_up_to":
        if len(args.params) != 1:
            raise UsageError("all_graphs_up_to takes one size bound")
        _emit([G.to_json() for G in all_graphs_up_to(args.params[0])], args)
        return 0
    if args.kind == "complement_of":
        if not args.of:
            raise UsageError("complement_of needs --of GRAPH")
        G = complement_of(load_graph(args.of))
    elif args.kind == "erdos_renyi":
        if len(args.params) != 1:
            raise UsageError("erdos_renyi takes one size parameter plus --seed")
        G = generate("erdos_renyi", args.params[0], args.seed, args.p)
    else:
        G = generate(args.kind, *args.params)
    _emit(G.to_json(), args)
    return 0


def cmd_check(args) -> int:
    overrides = {"max_n": args.max_n, "max_m": args.max_m, "max_r": args.max_r,
                 "random": args.random, "seed": args.seed}
    defaults = checks.SUITES[args.suite].defaults
    res = checks.run_suite(args.suite, threads=args.threads,
                           **{k: v for k, v in overrides.items() if k in defaults})
    out = res.to_json()
    out.pop("elapsed")  # keeps stdout byte-identical across runs
    if args.timing:
        out["elapsed"] = round(res.elapsed, 3)
    _emit(out, args)
    return 0 if res.passed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="diffgames", description="Differential games and FO model checking on small graphs.")
    p.add_argument("--pretty", action="store_true", help="indent JSON output")
    # --pretty is accepted after the subcommand too
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="indent JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    mc = sub.add_parser("mc", parents=[common], help="model-check a sentence on a graph")
    mc.add_argument("graph")
    mc.add_argument("formula", nargs="?", help="file holding one sentence")
    mc.add_argument("--expr", help="sentence text instead of a file")
    mc.add_argument("--engine", default="difftree", choices=["brute", "fulltree", "difftree", "difflocal"])
    mc.set_defaults(func=cmd_mc)

    g = sub.add_parser("game", parents=[common], help="decide (or trace) an EF / semi-differential / differential game")
    g.add_argument("graph")
    g.add_argument("--kind", default="d", choices=[k.value for k in GameKind])
    g.add_argument("--rounds", type=int, required=True)
    g.add_argument("--a", type=_tuple, required=True, help="comma-separated start tuple")
    g.add_argument("--b", type=_tuple, required=True)
    g.add_argument("--other", help="second graph for the EF game")
    g.add_argument("--trace", action="store_true", help="emit an optimal-play transcript")
    g.set_defaults(func=cmd_game)

    r = sub.add_parser("relation", parents=[common], help="dump a vertex relation graph")
    r.add_argument("graph")
    r.add_argument("--kind", default="d", choices=["d", "sd", "ef", "fo", "d_game", "sd_game", "ef_game", "fo_type"])
    r.add_argument("--rounds", type=int, required=True)
    r.set_defaults(func=cmd_relation)

    d = sub.add_parser("dn", parents=[common], help="differential-neighbourhood census on a coloured graph")
    d.add_argument("graph")
    d.add_argument("--r", type=int, required=True)
    d.add_argument("--rounds", type=int, help="game rounds (default r)")
    col = d.add_mutually_exclusive_group()
    col.add_argument("--coloring", help="JSON colouring file")
    col.add_argument("--preset", choices=sorted(PRESETS))
    d.set_defaults(func=cmd_dn)

    gen = sub.add_parser("gen", parents=[common], help="generate a graph from a named family")
    gen.add_argument("kind", choices=["path", "cycle", "complete", "edgeless", "half_graph", "ladder",
                                      "erdos_renyi", "complement_of", "all_graphs_up_to"])
    gen.add_argument("params", type=int, nargs="*")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--p", type=float, default=0.5)
    gen.add_argument("--of", help="input graph for complement_of")
    gen.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", parents=[common], help="run a property suite")
    c.add_argument("suite", help="one of: " + ", ".join(checks.SUITES))
    c.add_argument("--max-n", type=int)
    c.add_argument("--max-m", type=int)
    c.add_argument("--max-r", type=int)
    c.add_argument("--random", type=int, help="number of seeded random graphs (oracle_equiv)")
    c.add_argument("--seed", type=int)
    c.add_argument("--threads", type=int, default=1)
    c.add_argument("--timing", action="store_true", help="include elapsed seconds in the output")
    c.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "check" and args.suite not in checks.SUITES:
        print(f"diffgames: unknown suite {args.suite!r}", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UsageError, GraphError, FormulaSyntaxError, FormulaError, SizeGuardError,
            OSError, ValueError) as exc:
        print(f"diffgames: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
