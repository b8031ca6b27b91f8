"""Labelled, optionally coloured, simple graphs and the neighbourhood algebra on them.

Vertices are the integers ``0..n-1``. Adjacency is stored as one bitmask per
vertex, which keeps the symmetric-difference neighbourhoods used by the games
cheap to compute.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping

COLOR_PREFIX = "color:"


class GraphError(ValueError):
    """Invalid graph input (bad vertex, malformed file, unknown family)."""


class UndefinedPairError(GraphError):
    """DN_r requested for two vertices of different colours."""


def bits(mask: int) -> list[int]:
    """Positions of the set bits of ``mask``, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class LabeledGraph:
    n: int
    nbrs: tuple[int, ...]
    labels: tuple[frozenset, ...]
    colors: tuple[int, ...] | None = None
    # labels as seen by formulas and games: own labels plus "color:k"
    atom_labels: tuple[frozenset, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.nbrs) != self.n or len(self.labels) != self.n:
            raise GraphError("adjacency/label arrays must have length n")
        full = (1 << self.n) - 1
        for v, mask in enumerate(self.nbrs):
            if mask & ~full:
                raise GraphError(f"vertex {v} has a neighbour out of range")
            if (mask >> v) & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in bits(mask):
                if not (self.nbrs[u] >> v) & 1:
                    raise GraphError(f"asymmetric edge {v}-{u}")
        if self.colors is not None and len(self.colors) != self.n:
            raise GraphError("colour array must have length n")
        if self.colors is None:
            atoms = self.labels
        else:
            atoms = tuple(ls | {f"{COLOR_PREFIX}{c}"} for ls, c in zip(self.labels, self.colors))
        object.__setattr__(self, "atom_labels", atoms)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Mapping[int, Iterable[str]] | None = None,
        colors: Mapping[int, int] | Iterable[int] | None = None,
    ) -> "LabeledGraph":
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        nbrs = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            nbrs[u] |= 1 << v
            nbrs[v] |= 1 << u
        lab = [frozenset()] * n
        for v, ls in (labels or {}).items():
            v = int(v)
            if not 0 <= v < n:
                raise GraphError(f"label on out-of-range vertex {v}")
            lab[v] = frozenset(ls)
        col = None
        if colors is not None:
            if isinstance(colors, Mapping):
                if set(int(v) for v in colors) != set(range(n)):
                    raise GraphError("colouring must assign every vertex exactly once")
                col = tuple(int(colors[v] if v in colors else colors[str(v)]) for v in range(n))
            else:
                col = tuple(int(c) for c in colors)
        return cls(n, tuple(nbrs), tuple(lab), col)

    # -- queries -----------------------------------------------------------

    def check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < self.n:
            raise GraphError(f"vertex {v!r} out of range for n={self.n}")

    def adjacent(self, u: int, v: int) -> bool:
        return bool((self.nbrs[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return bits(self.nbrs[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.nbrs[u]) if u < v]

    def label_alphabet(self) -> frozenset:
        """All atom labels occurring on some vertex (colour labels included)."""
        return frozenset().union(*self.atom_labels) if self.n else frozenset()

    @property
    def is_colored(self) -> bool:
        return self.colors is not None

    # -- derived graphs ----------------------------------------------------

    def with_labels(self, extra: Mapping[int, Iterable[str]]) -> "LabeledGraph":
        lab = list(self.labels)
        for v, ls in extra.items():
            lab[v] = lab[v] | frozenset(ls)
        return LabeledGraph(self.n, self.nbrs, tuple(lab), self.colors)

    def with_colors(self, colors: Iterable[int] | None) -> "LabeledGraph":
        return LabeledGraph(self.n, self.nbrs, self.labels,
                            None if colors is None else tuple(colors))

    def without_labels(self) -> "LabeledGraph":
        return LabeledGraph(self.n, self.nbrs, (frozenset(),) * self.n, None)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        out: dict = {
            "n": self.n,
            "edges": [list(e) for e in self.edges()],
            "labels": {str(v): sorted(ls) for v, ls in enumerate(self.labels) if ls},
        }
        if self.colors is not None:
            out["colors"] = {str(v): c for v, c in enumerate(self.colors)}
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "LabeledGraph":
        try:
            n = int(data["n"])
            edges = [tuple(int(x) for x in e) for e in data.get("edges", [])]
            labels = {int(v): ls for v, ls in data.get("labels", {}).items()}
            colors = data.get("colors")
            if colors is not None:
                colors = {int(v): int(c) for v, c in colors.items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc
        if any(len(e) != 2 for e in edges):
            raise GraphError("edges must be pairs")
        return cls.from_edges(n, edges, labels, colors)


def load_graph(path: str | Path) -> LabeledGraph:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise GraphError(f"cannot read graph {path}: {exc}") from exc
    return LabeledGraph.from_json(data)


def save_graph(G: LabeledGraph, path: str | Path) -> None:
    Path(path).write_text(json.dumps(G.to_json(), sort_keys=True) + "\n", encoding="utf-8")


# -- neighbourhood algebra -------------------------------------------------


def sym_diff_mask(G: LabeledGraph, u: int, v: int) -> int:
    return G.nbrs[u] ^ G.nbrs[v]


def sym_diff_neighborhood(G: LabeledGraph, u: int, v: int) -> list[int]:
    """D(u, v) = N(u) xor N(v). May contain u or v themselves."""
    G.check_vertex(u)
    G.check_vertex(v)
    return bits(G.nbrs[u] ^ G.nbrs[v])


def differential_neighborhood_mask(G: LabeledGraph, u: int, v: int, r: int,
                                   closed: bool = False) -> int:
    if G.colors is None:
        raise GraphError("differential neighbourhoods need a coloured graph")
    G.check_vertex(u)
    G.check_vertex(v)
    if r < 1:
        raise GraphError("radius must be at least 1")
    col = G.colors
    if col[u] != col[v]:
        raise UndefinedPairError(f"DN undefined: colour({u})={col[u]} != colour({v})={col[v]}")
    current = G.nbrs[u] ^ G.nbrs[v]
    for _ in range(r - 1):
        members = bits(current)
        grown = current
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                if col[a] == col[b]:
                    grown |= G.nbrs[a] ^ G.nbrs[b]
        if grown == current:
            break
        current = grown
    if closed:
        current |= (1 << u) | (1 << v)
    return current


def differential_neighborhood(G: LabeledGraph, u: int, v: int, r: int,
                              closed: bool = False) -> list[int]:
    """DN_r(u, v) on a coloured graph; with ``closed`` also u and v (DN_r[u, v])."""
    return bits(differential_neighborhood_mask(G, u, v, r, closed))


def induced_subgraph(G: LabeledGraph, S: Iterable[int]) -> tuple[LabeledGraph, dict[int, int]]:
    """G[S] with labels and colours kept, plus the old->new vertex map."""
    verts = sorted(set(S))
    for v in verts:
        G.check_vertex(v)
    index = {v: i for i, v in enumerate(verts)}
    nbrs = []
    for v in verts:
        mask = 0
        for w in bits(G.nbrs[v]):
            if w in index:
                mask |= 1 << index[w]
        nbrs.append(mask)
    colors = None if G.colors is None else tuple(G.colors[v] for v in verts)
    H = LabeledGraph(len(verts), tuple(nbrs), tuple(G.labels[v] for v in verts), colors)
    return H, index


def distance(G: LabeledGraph, u: int, v: int) -> float:
    """BFS distance; ``math.inf`` when disconnected."""
    G.check_vertex(u)
    G.check_vertex(v)
    if u == v:
        return 0
    seen = 1 << u
    queue = deque([(u, 0)])
    while queue:
        x, d = queue.popleft()
        fresh = G.nbrs[x] & ~seen
        if (fresh >> v) & 1:
            return d + 1
        seen |= fresh
        queue.extend((y, d + 1) for y in bits(fresh))
    return math.inf


# -- generators ------------------------------------------------------------


def path(n: int) -> LabeledGraph:
    return LabeledGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> LabeledGraph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return LabeledGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> LabeledGraph:
    return LabeledGraph.from_edges(n, itertools.combinations(range(n), 2))


def edgeless(n: int) -> LabeledGraph:
    return LabeledGraph.from_edges(n)


def half_graph(n: int) -> LabeledGraph:
    """Half-graph of order n on v_1..v_2n, stored as vertices 0..2n-1.

    v_i (odd i) is adjacent to v_j (even j) iff i < j, so the odd side is
    {0, 2, 4, ...} and the even side {1, 3, 5, ...} in 0-based ids.
    """
    if n < 1:
        raise GraphError("half-graph order must be >= 1")
    edges = [(i - 1, j - 1) for i in range(1, 2 * n + 1, 2)
             for j in range(2, 2 * n + 1, 2) if i < j]
    return LabeledGraph.from_edges(2 * n, edges)


def ladder(n: int) -> LabeledGraph:
    """Ladder P_n x K_2: rails 0..n-1 and n..2n-1 joined by rungs i -- n+i."""
    if n < 1:
        raise GraphError("ladder length must be >= 1")
    edges = [(i, i + 1) for i in range(n - 1)]
    edges += [(n + i, n + i + 1) for i in range(n - 1)]
    edges += [(i, n + i) for i in range(n)]
    return LabeledGraph.from_edges(2 * n, edges)


def complement_of(G: LabeledGraph) -> LabeledGraph:
    full = (1 << G.n) - 1
    nbrs = tuple(full & ~m & ~(1 << v) for v, m in enumerate(G.nbrs))
    return LabeledGraph(G.n, nbrs, G.labels, G.colors)


def erdos_renyi(n: int, seed: int, p: float = 0.5) -> LabeledGraph:
    rng = random.Random(seed)
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p]
    return LabeledGraph.from_edges(n, edges)


def graphs_on(n: int) -> Iterator[LabeledGraph]:
    """Every labelled simple graph on exactly n vertices (2^(n choose 2) of them)."""
    pairs = list(itertools.combinations(range(n), 2))
    for code in range(1 << len(pairs)):
        nbrs = [0] * n
        for k, (u, v) in enumerate(pairs):
            if (code >> k) & 1:
                nbrs[u] |= 1 << v
                nbrs[v] |= 1 << u
        yield LabeledGraph(n, tuple(nbrs), (frozenset(),) * n)


def all_graphs_up_to(n: int, min_n: int = 1) -> Iterator[LabeledGraph]:
    """Every labelled adjacency matrix on min_n..n vertices, smallest first."""
    for k in range(min_n, n + 1):
        yield from graphs_on(k)


FAMILIES = {
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "edgeless": edgeless,
    "half_graph": half_graph,
    "ladder": ladder,
    "erdos_renyi": erdos_renyi,
}


def generate(kind: str, *params) -> LabeledGraph:
    """Build a graph from a named family; ``complement_of`` takes a graph."""
    if kind == "complement_of":
        if len(params) != 1 or not isinstance(params[0], LabeledGraph):
            raise GraphError("complement_of expects one graph")
        return complement_of(params[0])
    if kind == "all_graphs_up_to":
        raise GraphError("all_graphs_up_to is a stream; call all_graphs_up_to() directly")
    try:
        fn = FAMILIES[kind]
    except KeyError:
        raise GraphError(f"unknown graph family {kind!r}") from None
    try:
        if any(isinstance(p, int) and p < 0 for p in params):
            raise GraphError(f"negative parameter for {kind}")
        return fn(*params)
    except TypeError as exc:
        raise GraphError(f"bad parameters for {kind}: {exc}") from exc
