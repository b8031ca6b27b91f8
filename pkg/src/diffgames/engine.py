"""Evaluation-tree model checking.

The brute-force engine evaluates formulas directly. The ``difftree`` engine builds
a reduced evaluation tree whose children at every node are representatives of
the type classes of the extended tuples (computed with differential games on a
pin-labelled graph) and reads the verdict off that tree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

from .games import Winner, d_winner, l_of
from .graph import LabeledGraph, differential_neighborhood_mask, induced_subgraph, bits
from .logic.formula import Formula
from .logic.parser import parse_formula
from .logic.semantics import (
    PrenexSentence, compile_formula, evaluate, make_env, pin_tuple_labels, to_prenex, xi_formula,
)
from .relations import STATS, greedy_mis, RelationGraph, representatives

DEFAULT_MAX_FULL_TREE = 10 ** 7

RepFn = Callable[[LabeledGraph, tuple, int], Sequence[int]]


class SizeGuardError(RuntimeError):
    pass


@dataclass(eq=False)
class Node:
    vertex: int | None
    children: list["Node"] = field(default_factory=list)


@dataclass(eq=False)
class EvalTree:
    root: Node
    height: int
    rep_calls: int = 0

    def size(self) -> int:
        count, stack = 0, [self.root]
        while stack:
            node = stack.pop()
            count += 1
            stack.extend(node.children)
        return count

    def level_branching(self) -> list[int]:
        """Largest number of children at each depth 0..height-1."""
        out = [0] * self.height
        stack = [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            if depth < self.height:
                out[depth] = max(out[depth], len(node.children))
                stack.extend((c, depth + 1) for c in node.children)
        return out

    def leaf_depths(self) -> set[int]:
        depths, stack = set(), [(self.root, 0)]
        while stack:
            node, depth = stack.pop()
            if node.children:
                stack.extend((c, depth + 1) for c in node.children)
            else:
                depths.add(depth)
        return depths

    def paths(self):
        """Root-to-leaf vertex tuples."""
        def walk(node, prefix):
            if not node.children:
                yield prefix
            for c in node.children:
                yield from walk(c, prefix + (c.vertex,))
        yield from walk(self.root, ())


# -- (G, T)-isomorphism types -----------------------------------------------------


def iso_type(G: LabeledGraph, t: Sequence[int]) -> tuple:
    """Canonical atomic type: equality pattern, adjacency pattern, label vector."""
    t = tuple(t)
    for v in t:
        G.check_vertex(v)
    eq = tuple(t.index(v) for v in t)
    adj = tuple(int(G.adjacent(t[i], t[j])) for i in range(len(t)) for j in range(i))
    labels = tuple(tuple(sorted(G.atom_labels[v])) for v in t)
    return eq, adj, labels


# -- trees -------------------------------------------------------------------------


def full_tree(G: LabeledGraph, q: int, max_nodes: int = DEFAULT_MAX_FULL_TREE) -> EvalTree:
    """Every non-leaf node gets one child per vertex of G."""
    if G.n ** q > max_nodes:
        raise SizeGuardError(f"full tree with n^q = {G.n ** q} leaves exceeds {max_nodes}")

    def build(vertex, depth):
        node = Node(vertex)
        if depth < q:
            node.children = [build(v, depth + 1) for v in range(G.n)]
        return node

    root = build(None, 0)
    return EvalTree(root, q)


def reduced_tree(G: LabeledGraph, q: int, rep_fn: RepFn = representatives) -> EvalTree:
    """Children of the root come from rep_fn(G, (), q-1); below depth i >= 1 from rep_fn(G, path, q-i)."""
    calls = 0

    def build(vertex, path):
        nonlocal calls
        node = Node(vertex)
        depth = len(path)
        if depth < q:
            p = q - 1 if depth == 0 else q - depth
            calls += 1
            node.children = [build(w, path + (w,)) for w in rep_fn(G, path, p)]
        return node

    root = build(None, ())
    return EvalTree(root, q, calls)


@lru_cache(maxsize=256)
def _default_reduced_tree(G: LabeledGraph, q: int) -> EvalTree:
    return reduced_tree(G, q)


def verdict_from_tree(T: EvalTree, G: LabeledGraph, phi: PrenexSentence) -> bool:
    """Label leaves by the matrix, aggregate by the quantifier prefix, return the root label."""
    if T.height != phi.q:
        raise ValueError(f"tree height {T.height} does not match {phi.q} quantifiers")
    matrix = compile_formula(G, phi.matrix, phi.variables)
    env = make_env(matrix)
    kinds = [k for k, _ in phi.prefix]

    def label(node, depth):
        if depth == T.height:
            return matrix(env)
        exists = kinds[depth] == "exists"
        for child in node.children:
            env[depth] = child.vertex
            if label(child, depth + 1) == exists:
                return exists
        return not exists

    return label(T.root, 0)


def gq_labels(T: EvalTree, G: LabeledGraph) -> dict[Node, object]:
    """(G, q)-tree labels: iso type at leaves, set of child labels above."""
    labels: dict[Node, object] = {}

    def walk(node, path):
        if len(path) == T.height:
            lab = ("leaf", iso_type(G, path)) if path else ("leaf", ())
        else:
            lab = frozenset(walk(c, path + (c.vertex,)) for c in node.children)
        labels[node] = lab
        return lab

    walk(T.root, ())
    return labels


def full_tree_mc(G: LabeledGraph, phi: PrenexSentence | Formula | str,
                 max_nodes: int = DEFAULT_MAX_FULL_TREE) -> bool:
    phi = _as_prenex(phi)
    return verdict_from_tree(full_tree(G, phi.q, max_nodes), G, phi)


def _as_prenex(phi) -> PrenexSentence:
    if isinstance(phi, str):
        phi = parse_formula(phi)
    if isinstance(phi, PrenexSentence):
        return phi
    return to_prenex(phi)


# -- pipelines ---------------------------------------------------------------------


def model_check(G: LabeledGraph, phi: PrenexSentence | Formula | str, engine: str = "difftree",
                rep_fn: RepFn | None = None) -> tuple[bool, dict]:
    """Decide G |= phi. Engines: ``brute``, ``fulltree``, ``difftree``, ``difflocal``.

    ``difflocal`` is ``difftree`` with each game decided on the induced DN
    subgraph; it needs a coloured graph.
    """
    if isinstance(phi, str):
        phi = parse_formula(phi)
    diag: dict = {"engine": engine}
    if engine == "brute":
        f = phi.to_formula() if isinstance(phi, PrenexSentence) else phi
        verdict = evaluate(G, f)
        diag.update(tree_nodes=0, level_branching=[], relation_calls=0)
    elif engine == "fulltree":
        pre = _as_prenex(phi)
        T = full_tree(G, pre.q)
        verdict = verdict_from_tree(T, G, pre)
        diag.update(tree_nodes=T.size(), level_branching=T.level_branching(), relation_calls=0)
    elif engine in ("difftree", "difflocal"):
        pre = _as_prenex(phi)
        if engine == "difflocal":
            if not G.is_colored:
                raise ValueError("the difflocal engine needs a coloured graph")
            T = reduced_tree(G, pre.q, rep_fn or difflocal_representatives)
        elif rep_fn is None:
            T = _default_reduced_tree(G, pre.q)
        else:
            T = reduced_tree(G, pre.q, rep_fn)
        verdict = verdict_from_tree(T, G, pre)
        diag.update(tree_nodes=T.size(), level_branching=T.level_branching(),
                    relation_calls=T.rep_calls)
    else:
        raise ValueError(f"unknown engine {engine!r}")
    diag["verdict"] = verdict
    return verdict, diag


def difflocal_winner(G: LabeledGraph, u: int, v: int, r: int, mode: str = "direct",
                     radius: int | None = None) -> Winner:
    """Winner of the r-round differential game from (u, v), decided on G[DN[u, v]].

    The closed neighbourhood has radius ``radius`` (default r). ``direct`` solves
    the game on the induced subgraph, ``xi`` evaluates the game formula there.
    """
    radius = r if radius is None else radius
    if u == v:
        G.check_vertex(u)
        return Winner.DUPLICATOR
    dn = differential_neighborhood_mask(G, u, v, max(radius, 1), closed=True)
    H, index = induced_subgraph(G, bits(dn))
    hu, hv = index[u], index[v]
    if mode == "direct":
        return d_winner(H, [hu], [hv], r)
    if mode == "xi":
        f = _xi_cached(r, H.label_alphabet())
        return Winner.DUPLICATOR if evaluate(H, f, {"x_1": hu, "y_1": hv}) else Winner.SPOILER
    raise ValueError(f"unknown mode {mode!r}")


@lru_cache(maxsize=64)
def _xi_cached(r: int, alphabet: frozenset) -> Formula:
    return xi_formula(r, 1, alphabet)


def difflocal_relation(G: LabeledGraph, rounds: int, mode: str = "direct") -> RelationGraph:
    """The differential-game relation with every pair decided locally (coloured G)."""
    rows = [1 << v for v in range(G.n)]
    for u, v in itertools.combinations(range(G.n), 2):
        STATS.pair_checks += 1
        if G.colors[u] == G.colors[v] and difflocal_winner(G, u, v, rounds, mode) is Winner.DUPLICATOR:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    STATS.relations_built += 1
    return RelationGraph(G.n, tuple(rows), "d_game_local", rounds)


def difflocal_representatives(G: LabeledGraph, vbar: tuple, p: int) -> list[int]:
    pinned = pin_tuple_labels(G, vbar)
    return greedy_mis(difflocal_relation(pinned, l_of(p)))
