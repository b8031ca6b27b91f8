"""Brute-force FO semantics and the formula constructions built on top of it."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

from ..graph import GraphError, LabeledGraph, bits
from .formula import (
    ATOMS, BINARY, FALSE, TRUE, And, Bot, Edge, Eq, Exists, Forall, Formula, Iff,
    Implies, Label, Not, Or, Top, conj, free_vars, is_quantifier_free, rename_free,
)


class FormulaError(ValueError):
    """Formula does not fit the operation (open sentence, wrong free variables...)."""


# -- evaluation --------------------------------------------------------------


Env = list


def compile_formula(G: LabeledGraph, f: Formula, free: Sequence[str]) -> Callable[[Env], bool]:
    """Compile ``f`` against ``G``; the closure reads free variables from env[0..len(free)).

    Quantified variables get their own slots after the free ones, so the
    returned function only needs an env list of sufficient length; use
    :func:`make_env` to get one.
    """
    slots = {v: i for i, v in enumerate(free)}
    counter = [len(free)]
    fn = _compile(G, f, slots, counter)
    fn.env_size = counter[0]
    return fn


def make_env(fn, values: Sequence[int] = ()) -> Env:
    env = [0] * max(fn.env_size, len(values))
    env[:len(values)] = values
    return env


def _compile(G, f, slots, counter):
    nbrs = G.nbrs
    if isinstance(f, Edge):
        try:
            i, j = slots[f.x], slots[f.y]
        except KeyError as exc:
            raise FormulaError(f"unbound variable {exc.args[0]}") from None
        return lambda env: (nbrs[env[i]] >> env[j]) & 1 == 1
    if isinstance(f, Eq):
        try:
            i, j = slots[f.x], slots[f.y]
        except KeyError as exc:
            raise FormulaError(f"unbound variable {exc.args[0]}") from None
        return lambda env: env[i] == env[j]
    if isinstance(f, Label):
        if f.x not in slots:
            raise FormulaError(f"unbound variable {f.x}")
        i = slots[f.x]
        mask = 0
        for v, ls in enumerate(G.atom_labels):
            if f.label in ls:
                mask |= 1 << v
        return lambda env: (mask >> env[i]) & 1 == 1
    if isinstance(f, Top):
        return lambda env: True
    if isinstance(f, Bot):
        return lambda env: False
    if isinstance(f, Not):
        g = _compile(G, f.body, slots, counter)
        return lambda env: not g(env)
    if isinstance(f, BINARY):
        a = _compile(G, f.left, slots, counter)
        b = _compile(G, f.right, slots, counter)
        if isinstance(f, And):
            return lambda env: a(env) and b(env)
        if isinstance(f, Or):
            return lambda env: a(env) or b(env)
        if isinstance(f, Implies):
            return lambda env: (not a(env)) or b(env)
        return lambda env: a(env) == b(env)
    slot = counter[0]
    counter[0] += 1
    body = _compile(G, f.body, {**slots, f.var: slot}, counter)
    universe = range(G.n)
    if isinstance(f, Exists):
        def ex(env):
            for v in universe:
                env[slot] = v
                if body(env):
                    return True
            return False
        return ex

    def fa(env):
        for v in universe:
            env[slot] = v
            if not body(env):
                return False
        return True
    return fa


def evaluate(G: LabeledGraph, f: Formula, assignment: Mapping[str, int] | None = None) -> bool:
    """Truth of ``f`` in ``G`` under ``assignment``; quantifiers range over V(G).

    Labels the graph does not carry are simply false.
    """
    assignment = dict(assignment or {})
    missing = free_vars(f) - assignment.keys()
    if missing:
        raise FormulaError(f"unbound free variable(s): {', '.join(sorted(missing))}")
    names = sorted(assignment)
    for name in names:
        G.check_vertex(assignment[name])
    fn = compile_formula(G, f, names)
    return fn(make_env(fn, [assignment[v] for v in names]))


# -- prenex form ---------------------------------------------------------------


@dataclass(frozen=True)
class PrenexSentence:
    prefix: tuple[tuple[str, str], ...]  # ("exists" | "forall", variable)
    matrix: Formula

    def __post_init__(self):
        if not is_quantifier_free(self.matrix):
            raise FormulaError("prenex matrix must be quantifier-free")
        names = [v for _, v in self.prefix]
        if len(set(names)) != len(names):
            raise FormulaError("prefix variables must be distinct")
        if not free_vars(self.matrix) <= set(names):
            raise FormulaError("prenex sentence has free variables")

    @property
    def q(self) -> int:
        return len(self.prefix)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for _, v in self.prefix)

    def to_formula(self) -> Formula:
        f = self.matrix
        for kind, var in reversed(self.prefix):
            f = Exists(var, f) if kind == "exists" else Forall(var, f)
        return f

    def __str__(self):
        return str(self.to_formula())


def _split_prefix(f: Formula):
    prefix = []
    while isinstance(f, (Exists, Forall)):
        prefix.append(("exists" if isinstance(f, Exists) else "forall", f.var))
        f = f.body
    return prefix, f


def to_prenex(f: Formula) -> PrenexSentence:
    """Equivalent prenex sentence with prefix variables renamed to x_1..x_q.

    Already-prenex input keeps its matrix. Otherwise quantifiers are pulled out
    after pushing negations through quantified subformulas; ``<->`` between
    quantified sides is expanded into two implications, which duplicates their
    quantifiers.
    """
    if free_vars(f):
        raise FormulaError(f"not a sentence; free: {', '.join(sorted(free_vars(f)))}")
    prefix, matrix = _split_prefix(f)
    if not is_quantifier_free(matrix) or len({v for _, v in prefix}) != len(prefix):
        fresh = itertools.count()
        prefix, matrix = _pnf(f, True, {}, fresh)
    canon = {v: f"x_{i + 1}" for i, (_, v) in enumerate(prefix)}
    return PrenexSentence(tuple((k, canon[v]) for k, v in prefix), rename_free(matrix, canon))


def _pnf(f, positive, names, fresh):
    if is_quantifier_free(f):
        g = rename_free(f, names)
        return [], g if positive else Not(g)
    if isinstance(f, Not):
        return _pnf(f.body, not positive, names, fresh)
    if isinstance(f, Implies):
        return _pnf(Or(Not(f.left), f.right), positive, names, fresh)
    if isinstance(f, Iff):
        return _pnf(And(Implies(f.left, f.right), Implies(f.right, f.left)), positive, names, fresh)
    if isinstance(f, (And, Or)):
        pl, ml = _pnf(f.left, positive, names, fresh)
        pr, mr = _pnf(f.right, positive, names, fresh)
        conj_like = isinstance(f, And) == positive
        return pl + pr, (And(ml, mr) if conj_like else Or(ml, mr))
    tmp = f"#{next(fresh)}"
    existential = isinstance(f, Exists) == positive
    p, m = _pnf(f.body, positive, {**names, f.var: tmp}, fresh)
    return [("exists" if existential else "forall", tmp)] + p, m


# -- the differential-game formula ---------------------------------------------


def _differs(x: str, y: str, z: str) -> Formula:
    # z lies in D(x, y)
    return Or(And(Edge(x, z), Not(Edge(y, z))), And(Not(Edge(x, z)), Edge(y, z)))


def _xi0(xs, ys, alphabet) -> Formula:
    k = len(xs)
    parts = []
    for i, j in itertools.combinations(range(k), 2):
        parts.append(Iff(Edge(xs[i], xs[j]), Edge(ys[i], ys[j])))
    for i, j in itertools.combinations(range(k), 2):
        parts.append(Iff(Eq(xs[i], xs[j]), Eq(ys[i], ys[j])))
    for i in range(k):
        for a in alphabet:
            parts.append(Iff(Label(a, xs[i]), Label(a, ys[i])))
    return conj(parts)


def _xi(m, xs, ys, alphabet) -> Formula:
    base = _xi0(xs, ys, alphabet)
    if m == 0:
        return base
    d = len(xs)
    s, r = f"s_{d + 1}", f"r_{d + 1}"
    rounds = []
    for i in range(len(xs)):
        x, y = xs[i], ys[i]
        a_move = Exists(r, And(_differs(x, y, r), _xi(m - 1, xs + [s], ys + [r], alphabet)))
        b_move = Exists(r, And(_differs(x, y, r), _xi(m - 1, xs + [r], ys + [s], alphabet)))
        rounds.append(Forall(s, Implies(_differs(x, y, s), And(a_move, b_move))))
    return conj([base] + rounds) if base != TRUE else conj(rounds)


def xi_formula(m: int, k: int = 1, label_alphabet=()) -> Formula:
    """Formula over x_1..x_k, y_1..y_k true iff Duplicator wins the m-round differential game.

    Every level re-checks the atomic agreement of the tuples so a position that is
    already lost for Duplicator stays lost even when Spoiler has no legal move.
    """
    if m < 0 or k < 1:
        raise FormulaError("xi_formula needs m >= 0 and k >= 1")
    xs = [f"x_{i + 1}" for i in range(k)]
    ys = [f"y_{i + 1}" for i in range(k)]
    return _xi(m, xs, ys, sorted(label_alphabet))


# -- interpretations and pinned tuples -----------------------------------------------


def apply_interpretation(G: LabeledGraph, psi: Formula, x: str = "x", y: str = "y",
                         keep_labels: bool = False) -> LabeledGraph:
    """H = I_psi(G) with psi symmetrised and made irreflexive."""
    if free_vars(psi) != {x, y}:
        raise FormulaError(f"interpretation formula must have free variables exactly {{{x},{y}}}")
    fn = compile_formula(G, psi, [x, y])
    env = make_env(fn, [0, 0])
    holds = [[False] * G.n for _ in range(G.n)]
    for u in range(G.n):
        for v in range(G.n):
            env[0], env[1] = u, v
            holds[u][v] = fn(env)
    edges = [(u, v) for u, v in itertools.combinations(range(G.n), 2)
             if holds[u][v] or holds[v][u]]
    labels = {v: G.labels[v] for v in range(G.n)} if keep_labels else None
    colors = G.colors if keep_labels else None
    return LabeledGraph.from_edges(G.n, edges, labels, colors)


def pin_label(i: int) -> str:
    return f"pin:{i}"


def pin_nbr_label(i: int) -> str:
    return f"pinN:{i}"


def pin_tuple_labels(G: LabeledGraph, vbar: Sequence[int]) -> LabeledGraph:
    """Mark v_i with ``pin:i`` and every neighbour of v_i with ``pinN:i`` (1-based i)."""
    extra: dict[int, set] = {}
    for i, v in enumerate(vbar, start=1):
        G.check_vertex(v)
        extra.setdefault(v, set()).add(pin_label(i))
        for w in bits(G.nbrs[v]):
            extra.setdefault(w, set()).add(pin_nbr_label(i))
    return G.with_labels(extra) if extra else G


def rewrite_with_pinned_tuple(phi: Formula, G: LabeledGraph, vbar: Sequence[int],
                              variables: Sequence[str] | None = None,
                              target: str = "x") -> Formula:
    """Turn phi(x_1..x_k, x_{k+1}) into phi'(x) over ``pin_tuple_labels(G, vbar)``.

    Atoms between two pinned variables are decided in G; an atom between x_i and
    any other variable z becomes ``pin:i``/``pinN:i`` on z; x_{k+1} is renamed
    to ``target``.
    """
    k = len(vbar)
    for v in vbar:
        G.check_vertex(v)
    if variables is None:
        variables = [f"x_{i + 1}" for i in range(k + 1)]
    if len(variables) != k + 1:
        raise FormulaError(f"expected {k + 1} variable names")
    extra = free_vars(phi) - set(variables)
    if extra:
        raise FormulaError(f"unexpected free variable(s): {', '.join(sorted(extra))}")
    if target in _bound_vars(phi):
        raise FormulaError(f"target variable {target} is bound inside the formula")
    pinned = {name: i for i, name in enumerate(variables[:k])}
    return _rewrite(phi, G, list(vbar), pinned, {variables[k]: target})


def _bound_vars(f):
    if isinstance(f, ATOMS):
        return set()
    if isinstance(f, Not):
        return _bound_vars(f.body)
    if isinstance(f, BINARY):
        return _bound_vars(f.left) | _bound_vars(f.right)
    return {f.var} | _bound_vars(f.body)


def _rewrite(f, G, vbar, pinned, names):
    if isinstance(f, (Edge, Eq)):
        a, b = f.x, f.y
        if a in pinned and b in pinned:
            va, vb = vbar[pinned[a]], vbar[pinned[b]]
            hit = G.adjacent(va, vb) if isinstance(f, Edge) else va == vb
            return TRUE if hit else FALSE
        if a in pinned or b in pinned:
            i, other = (pinned[a], b) if a in pinned else (pinned[b], a)
            lab = pin_nbr_label(i + 1) if isinstance(f, Edge) else pin_label(i + 1)
            return Label(lab, names.get(other, other))
        return type(f)(names.get(a, a), names.get(b, b))
    if isinstance(f, Label):
        if f.x in pinned:
            return TRUE if f.label in G.atom_labels[vbar[pinned[f.x]]] else FALSE
        return Label(f.label, names.get(f.x, f.x))
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, Not):
        return Not(_rewrite(f.body, G, vbar, pinned, names))
    if isinstance(f, BINARY):
        return type(f)(_rewrite(f.left, G, vbar, pinned, names),
                       _rewrite(f.right, G, vbar, pinned, names))
    inner_pinned = {k: v for k, v in pinned.items() if k != f.var}
    inner_names = {k: v for k, v in names.items() if k != f.var}
    return type(f)(f.var, _rewrite(f.body, G, vbar, inner_pinned, inner_names))


__all__ = [
    "FormulaError", "PrenexSentence", "apply_interpretation", "compile_formula", "evaluate",
    "make_env", "pin_label", "pin_nbr_label", "pin_tuple_labels", "rewrite_with_pinned_tuple",
    "to_prenex", "xi_formula", "GraphError",
]
