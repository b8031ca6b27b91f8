"""Vertex relations induced by games and types, and what the model checker needs from them."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, Sequence

from .games import GameKind, l_of, solver
from .graph import LabeledGraph, bits
from .logic.semantics import pin_tuple_labels


class RelationKind(str, enum.Enum):
    D_GAME = "d_game"
    SD_GAME = "sd_game"
    EF_GAME = "ef_game"
    FO_TYPE = "fo_type"


_ALIASES = {"d": "d_game", "sd": "sd_game", "ef": "ef_game", "fo": "fo_type"}


def relation_kind(name: str | RelationKind) -> RelationKind:
    if isinstance(name, RelationKind):
        return name
    return RelationKind(_ALIASES.get(name, name))


@dataclass(frozen=True)
class RelationGraph:
    """Symmetric, reflexive relation on 0..n-1; ``rows[u]`` is the bitmask of partners of u."""

    n: int
    rows: tuple[int, ...]
    kind: str
    rounds: int

    def related(self, u: int, v: int) -> bool:
        return bool((self.rows[u] >> v) & 1)

    def pairs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.rows[u]) if u < v]

    def to_json(self) -> dict:
        return {"n": self.n, "kind": self.kind, "rounds": self.rounds,
                "pairs": [list(p) for p in self.pairs()]}

    @classmethod
    def from_pairs(cls, n: int, pairs, kind: str = "custom", rounds: int = 0) -> "RelationGraph":
        rows = [1 << v for v in range(n)]
        for u, v in pairs:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), kind, rounds)


class RelationStats:
    """Counts pairwise relation decisions; reset by callers that report diagnostics."""

    def __init__(self):
        self.pair_checks = 0
        self.relations_built = 0


STATS = RelationStats()


def _pair_test(G: LabeledGraph, kind: RelationKind, m: int) -> Callable[[int, int], bool]:
    if kind is RelationKind.FO_TYPE:
        types = TypeTable(G)
        return lambda u, v: types.equivalent((u,), (v,), m)
    game = {RelationKind.D_GAME: GameKind.D, RelationKind.SD_GAME: GameKind.SD,
            RelationKind.EF_GAME: GameKind.EF}[kind]
    s = solver(game, G)
    return lambda u, v: s.duplicator_wins([(u, v)], m)


def relation_graph(G: LabeledGraph, kind: str | RelationKind, rounds: int) -> RelationGraph:
    """Pairwise relation from single-vertex games (or q-types) with ``rounds`` rounds."""
    kind = relation_kind(kind)
    if rounds < 0:
        raise ValueError("rounds must be nonnegative")
    test = _pair_test(G, kind, rounds)
    rows = [1 << v for v in range(G.n)]
    for u in range(G.n):
        for v in range(u + 1, G.n):
            STATS.pair_checks += 1
            if test(u, v):
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    STATS.relations_built += 1
    return RelationGraph(G.n, tuple(rows), kind.value, rounds)


def components(R: RelationGraph) -> list[list[int]]:
    """Connected components (union-find), each sorted, ordered by smallest member."""
    parent = list(range(R.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in R.pairs():
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for v in range(R.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values(), key=lambda c: c[0])


def greedy_mis(R: RelationGraph) -> list[int]:
    """Scan vertices ascending, keeping each one unrelated to everything kept so far."""
    chosen: list[int] = []
    blocked = 0
    for v in range(R.n):
        if not (blocked >> v) & 1:
            chosen.append(v)
            blocked |= R.rows[v]
    return chosen


class TypeTable:
    """FO q-types of vertex tuples by bottom-up refinement.

    The rank-0 type of a tuple is its atomic type; the rank-q type is the rank-0
    type together with the set of rank-(q-1) types of all one-vertex extensions.
    Types are interned as integers, so two tuples (of one graph, or of several
    graphs sharing the table) have equal q-types iff their ids are equal.
    """

    def __init__(self, *graphs: LabeledGraph):
        self.graphs = graphs
        self._ids: dict = {}
        self._memo: dict = {}

    def _intern(self, key) -> int:
        return self._ids.setdefault(key, len(self._ids))

    def atomic(self, gi: int, t: tuple[int, ...]):
        G = self.graphs[gi]
        eq = tuple(t.index(v) for v in t)
        adj = tuple(int(G.adjacent(t[i], t[j])) for i in range(len(t)) for j in range(i))
        labs = tuple(tuple(sorted(G.atom_labels[v])) for v in t)
        return eq, adj, labs

    def type_id(self, t: Sequence[int], q: int, gi: int = 0) -> int:
        t = tuple(t)
        key = (gi, t, q)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if q == 0:
            tid = self._intern((0, self.atomic(gi, t)))
        else:
            base = self.type_id(t, 0, gi)
            ext = frozenset(self.type_id(t + (w,), q - 1, gi) for w in range(self.graphs[gi].n))
            tid = self._intern((q, base, ext))
        self._memo[key] = tid
        return tid

    def equivalent(self, a: Sequence[int], b: Sequence[int], q: int, ga: int = 0, gb: int = 0) -> bool:
        return self.type_id(a, q, ga) == self.type_id(b, q, gb)


def fo_type_equiv(G: LabeledGraph, a: Sequence[int], b: Sequence[int], q: int,
                  H: LabeledGraph | None = None) -> bool:
    """Do a (in G) and b (in H, default G) have the same FO q-type?"""
    if len(a) != len(b):
        raise ValueError("tuples must have equal length")
    if q < 0:
        raise ValueError("q must be nonnegative")
    for v in a:
        G.check_vertex(v)
    if H is None:
        for v in b:
            G.check_vertex(v)
        return TypeTable(G).equivalent(a, b, q)
    for v in b:
        H.check_vertex(v)
    return TypeTable(G, H).equivalent(a, b, q, 0, 1)


def type_classes(G: LabeledGraph, vbar: Sequence[int], q: int) -> list[list[int]]:
    """Classes of u ~ w iff (vbar, u) and (vbar, w) have equal q-types."""
    table = TypeTable(G)
    groups: dict[int, list[int]] = {}
    for u in range(G.n):
        groups.setdefault(table.type_id(tuple(vbar) + (u,), q), []).append(u)
    return sorted(groups.values(), key=lambda c: c[0])


def representatives(G: LabeledGraph, vbar: Sequence[int], p: int, mode: str = "mis") -> list[int]:
    """Vertex set meeting every class of the (vbar, p)-type relation.

    The tuple is encoded by pin labels, the differential-game relation with l(p)
    rounds is computed on the labelled graph, and one vertex is taken per
    greedy independent set element ("mis") or per component ("components").
    """
    if p < 0:
        raise ValueError("p must be nonnegative")
    pinned = pin_tuple_labels(G, vbar)
    R = relation_graph(pinned, RelationKind.D_GAME, l_of(p))
    if mode == "mis":
        return greedy_mis(R)
    if mode == "components":
        return [c[0] for c in components(R)]
    raise ValueError(f"unknown representative mode {mode!r}")


def exact_representatives(G: LabeledGraph, vbar: Sequence[int], p: int) -> list[int]:
    """One vertex per class of the exact (vbar, p)-type relation; the reference oracle."""
    return [c[0] for c in type_classes(G, vbar, p)]
