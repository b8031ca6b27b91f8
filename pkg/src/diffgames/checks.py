"""Exhaustive and seeded property suites over small graphs.

Every suite is a generator of work units plus a checker that returns the
counterexamples found in one unit. ``run_suite`` drives them, optionally over
a process pool, and assembles a deterministic :class:`CheckSuiteResult`.
"""

from __future__ import annotations

import itertools
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .corpus import OPEN_FORMULAS, SENTENCES
from .difflocal import apply_coloring, atomic_type_coloring, dn_census, uniform_coloring, Coloring
from .engine import difflocal_winner, model_check
from .games import Winner, d_winner, ef_winner, l_of, reachable_vertices, sd_winner
from .graph import (
    LabeledGraph, all_graphs_up_to, complement_of, cycle, differential_neighborhood, distance,
    erdos_renyi, half_graph, path,
)
from .logic import (
    evaluate, free_vars, parse_formula, pin_tuple_labels, quantifier_rank,
    rewrite_with_pinned_tuple, to_prenex, xi_formula,
)
from .logic.semantics import apply_interpretation
from .relations import components, fo_type_equiv, greedy_mis, relation_graph

DUP, SPO = Winner.DUPLICATOR, Winner.SPOILER


@dataclass
class CheckSuiteResult:
    suite: str
    instances: int
    counterexamples: list[dict] = field(default_factory=list)
    elapsed: float = 0.0
    params: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "instances": self.instances,
            "counterexamples": self.counterexamples,
            "elapsed": round(self.elapsed, 3),
            "params": self.params,
        }


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    units: Callable[[dict], Iterable]
    check: Callable[[object, dict], tuple[int, list[dict]]]
    defaults: dict


def _cex(G: LabeledGraph, observed, expected, **params) -> dict:
    return {"graph": G.to_json(), "params": params, "observed": observed, "expected": expected}


def _pairs(G: LabeledGraph):
    return itertools.combinations(range(G.n), 2)


def _graphs(p):
    return all_graphs_up_to(p["max_n"])


# -- suites ------------------------------------------------------------------------


def _lemma51(G, p):
    count, out = 0, []
    for m in range(p["max_m"] + 1):
        for u, v in _pairs(G):
            count += 1
            if ef_winner(G, [u], G, [v], m) is SPO and sd_winner(G, [u], [v], l_of(m)) is DUP:
                out.append(_cex(G, "sd Duplicator", "sd Spoiler", u=u, v=v, m=m, sd_rounds=l_of(m)))
    return count, out


def _monotonicity(G, p):
    count, out = 0, []
    for m in range(p["max_m"] + 1):
        for u, v in _pairs(G):
            count += 1
            if sd_winner(G, [u], [v], m) is SPO and d_winner(G, [u], [v], m) is DUP:
                out.append(_cex(G, "d Duplicator", "d Spoiler", u=u, v=v, m=m))
    return count, out


def _lemma61_units(p):
    for n in range(1, p["max_n"] + 1):
        yield path(n)
        if n >= 3:
            yield cycle(n)


def _lemma61(G, p):
    count, out = 0, []
    for m in range(p["max_m"] + 1):
        for u, v in _pairs(G):
            if distance(G, u, v) <= 2 * m or ef_winner(G, [u], G, [v], m) is not DUP:
                continue
            count += 1
            if d_winner(G, [u], [v], m) is not DUP:
                out.append(_cex(G, "d Spoiler", "d Duplicator", u=u, v=v, m=m))
    return count, out


def _lemma62(G, p):
    count, out = 0, []
    for m in range(p["max_m"] + 1):
        ef = relation_graph(G, "ef_game", m)
        for comp in components(relation_graph(G, "d_game", l_of(m))):
            count += 1
            head = comp[0]
            split = [w for w in comp if not ef.related(head, w)]
            if split:
                out.append(_cex(G, f"component {comp} spans EF classes", "inside one EF class",
                                m=m, d_rounds=l_of(m)))
    return count, out


_COMPLEMENT = parse_formula("!E(x,y)")


def _lemma65(G, p):
    count, out = 0, []
    H = apply_interpretation(G, _COMPLEMENT)
    for m in range(p["max_m"] + 1):
        for u, v in _pairs(G):
            count += 1
            if d_winner(G, [u], [v], m + 1) is DUP and d_winner(H, [u], [v], m) is SPO:
                out.append(_cex(G, "Spoiler in I(G)", "Duplicator in I(G)", u=u, v=v, m=m))
    return count, out


def _xi_agreement(G, p):
    count, out = 0, []
    for m in range(p["max_m"] + 1):
        f = xi_formula(m, 1, G.label_alphabet())
        for u in range(G.n):
            for v in range(G.n):
                count += 1
                by_formula = evaluate(G, f, {"x_1": u, "y_1": v})
                by_game = d_winner(G, [u], [v], m) is DUP
                if by_formula != by_game:
                    out.append(_cex(G, by_formula, by_game, u=u, v=v, m=m))
    return count, out


def _oracle_units(p):
    yield from ((G, None) for G in all_graphs_up_to(p["max_n"]))
    sizes = p["random_sizes"]
    for k in range(p["random"]):
        yield erdos_renyi(sizes[k % len(sizes)], p["seed"] + k), p["seed"] + k


def _oracle_equiv(unit, p):
    G, seed = unit
    count, out = 0, []
    for text in p.get("sentences") or SENTENCES:
        phi = to_prenex(parse_formula(text))
        count += 1
        brute, _ = model_check(G, phi, "brute")
        tree, _ = model_check(G, phi, "difftree")
        if brute != tree:
            out.append(_cex(G, tree, brute, sentence=text, seed=seed))
    return count, out


def _dn_locality_units(p):
    rng = random.Random(p["seed"])
    for G in all_graphs_up_to(p["max_n"]):
        yield apply_coloring(G, uniform_coloring(G))
        labelled = G.with_labels({v: {"red"} for v in range(G.n) if rng.random() < 0.4})
        yield apply_coloring(labelled, atomic_type_coloring(labelled))
        if G.n:
            yield G.with_colors([rng.randrange(2) for _ in range(G.n)])


def _dn_locality(G, p):
    count, out = 0, []
    for r in range(1, p["max_r"] + 1):
        report = dn_census(G, r)
        count += report["aggregate"]["pairs"]
        for u, v in report["aggregate"]["disagreements"]:
            out.append(_cex(G, "local != full", "local == full", u=u, v=v, r=r))
    return count, out


def _xi_local(G, p):
    count, out = 0, []
    for r in range(1, p["max_r"] + 1):
        for u, v in _pairs(G):
            if G.colors[u] != G.colors[v]:
                continue
            count += 1
            direct = difflocal_winner(G, u, v, r, "direct")
            xi = difflocal_winner(G, u, v, r, "xi")
            if direct is not xi:
                out.append(_cex(G, xi.value, direct.value, u=u, v=v, r=r))
    return count, out


def _containment(G, p):
    count, out = 0, []
    for r in range(1, p["max_r"] + 1):
        for u, v in _pairs(G):
            count += 1
            played = set(reachable_vertices("d", G, [u], [v], r))
            dn = set(differential_neighborhood(G, u, v, r, closed=True))
            if not played <= dn:
                out.append(_cex(G, sorted(played - dn), [], u=u, v=v, r=r))
    return count, out


def _type_agreement(G, p):
    count, out = 0, []
    for m in range(p["max_m"] + 1):
        for u, v in _pairs(G):
            count += 1
            game = ef_winner(G, [u], G, [v], m) is DUP
            types = fo_type_equiv(G, [u], [v], m)
            if game != types:
                out.append(_cex(G, game, types, u=u, v=v, m=m))
    return count, out


def _half_graph_units(p):
    return range(p["min_order"], p["max_order"] + 1)


def _half_graph(n, p):
    G = half_graph(n)
    count, out = 0, []
    for u, v in _pairs(G):
        if u % 2 != v % 2:
            continue
        count += 1
        if d_winner(G, [u], [v], 1) is not SPO:
            out.append(_cex(G, "Duplicator", "Spoiler", u=u, v=v, m=1))
    mis = greedy_mis(relation_graph(G, "d_game", 1))
    count += 1
    if len(mis) < n:
        out.append(_cex(G, len(mis), f">= {n}", order=n, check="greedy_mis size"))
    return count, out


def _pin_rewrite_units(p):
    for G in all_graphs_up_to(p["max_n"]):
        yield G
    rng = random.Random(p["seed"])
    for G in all_graphs_up_to(min(p["max_n"], 3)):
        yield G.with_labels({v: {"red"} for v in range(G.n) if rng.random() < 0.5})


def _pin_rewrite(G, p):
    count, out = 0, []
    formulas = [parse_formula(t) for t in OPEN_FORMULAS]
    for k in range(p["max_k"] + 1):
        names = [f"x_{i + 1}" for i in range(k + 1)]
        usable = [f for f in formulas if free_vars(f) <= set(names) and quantifier_rank(f) <= 2]
        for vbar in itertools.product(range(G.n), repeat=k):
            pinned = pin_tuple_labels(G, vbar)
            for f in usable:
                g = rewrite_with_pinned_tuple(f, G, vbar)
                for u in range(G.n):
                    count += 1
                    env = dict(zip(names, list(vbar) + [u]))
                    want = evaluate(G, f, {k2: v2 for k2, v2 in env.items() if k2 in free_vars(f)})
                    got = evaluate(pinned, g, {"x": u} if "x" in free_vars(g) else {})
                    if want != got:
                        out.append(_cex(G, got, want, formula=str(f), vbar=list(vbar), u=u))
    return count, out


SUITES: dict[str, Suite] = {s.name: s for s in [
    Suite("lemma51", "EF Spoiler win at m implies semi-differential Spoiler win at l(m)",
          _graphs, _lemma51, {"max_n": 5, "max_m": 2}),
    Suite("monotonicity", "semi-differential Spoiler win implies differential Spoiler win",
          _graphs, _monotonicity, {"max_n": 5, "max_m": 3}),
    Suite("lemma61", "far-apart EF-equivalent vertices are differential-game equivalent",
          _lemma61_units, _lemma61, {"max_n": 12, "max_m": 2}),
    Suite("lemma62", "EF classes are unions of components of the l(m)-round differential relation",
          _graphs, _lemma62, {"max_n": 5, "max_m": 2}),
    Suite("lemma65", "complement interpretation loses at most one differential round",
          _graphs, _lemma65, {"max_n": 6, "max_m": 2}),
    Suite("xi_agreement", "game formula agrees with the differential game solver",
          _graphs, _xi_agreement, {"max_n": 5, "max_m": 2}),
    Suite("oracle_equiv", "difftree model checking agrees with brute force",
          _oracle_units, _oracle_equiv,
          {"max_n": 5, "random": 100, "random_sizes": [6, 7, 8], "seed": 20240},),
    Suite("dn_locality", "differential games decided on G[DN_r[u,v]] agree with the full graph",
          _dn_locality_units, _dn_locality, {"max_n": 5, "max_r": 2, "seed": 7}),
    Suite("xi_local", "direct and formula-based local game evaluation agree",
          lambda p: (apply_coloring(G, uniform_coloring(G)) for G in all_graphs_up_to(p["max_n"])),
          _xi_local, {"max_n": 5, "max_r": 2}),
    Suite("containment", "every vertex of a legal differential run lies in DN_r[u,v]",
          lambda p: (apply_coloring(G, uniform_coloring(G)) for G in all_graphs_up_to(p["max_n"])),
          _containment, {"max_n": 5, "max_r": 2}),
    Suite("type_agreement", "EF game winner agrees with q-type equality",
          _graphs, _type_agreement, {"max_n": 5, "max_m": 2}),
    Suite("half_graph", "half-graph same-side pairs are separated by one differential round",
          _half_graph_units, _half_graph, {"min_order": 2, "max_order": 8}),
    Suite("pin_rewrite", "pinned-tuple rewriting preserves truth",
          _pin_rewrite_units, _pin_rewrite, {"max_n": 4, "max_k": 2, "seed": 3}),
]}


def _run_unit(args):
    name, unit, params = args
    return SUITES[name].check(unit, params)


def run_suite(name: str, threads: int = 1, **overrides) -> CheckSuiteResult:
    """Run one suite; ``overrides`` replace its default bounds (None values are ignored)."""
    try:
        suite = SUITES[name]
    except KeyError:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}") from None
    params = dict(suite.defaults)
    params.update({k: v for k, v in overrides.items() if v is not None})
    start = time.perf_counter()
    work = ((name, unit, params) for unit in suite.units(params))
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_unit, work, chunksize=64))
    else:
        results = [_run_unit(w) for w in work]
    total = sum(c for c, _ in results)
    cexs = [cx for _, found in results for cx in found]
    return CheckSuiteResult(name, total, cexs, time.perf_counter() - start, params)
