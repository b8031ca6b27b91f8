"""Colourings and batch differential-locality checks on coloured graphs."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .engine import difflocal_winner
from .games import Winner, d_winner
from .graph import GraphError, LabeledGraph, differential_neighborhood_mask


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise GraphError("a colouring needs at least one colour")
        for v, c in enumerate(self.colors):
            if not 0 <= c < self.m:
                raise GraphError(f"colour {c} of vertex {v} outside 0..{self.m - 1}")

    @classmethod
    def from_mapping(cls, n: int, colors: Mapping, m: int | None = None) -> "Coloring":
        try:
            table = {int(v): int(c) for v, c in colors.items()}
        except (TypeError, ValueError) as exc:
            raise GraphError(f"malformed colouring: {exc}") from exc
        bad = sorted(v for v in table if not 0 <= v < n)
        if bad:
            raise GraphError(f"colouring names out-of-range vertex {bad[0]}")
        missing = sorted(set(range(n)) - table.keys())
        if missing:
            raise GraphError(f"colouring misses vertex {missing[0]}")
        values = tuple(table[v] for v in range(n))
        if m is None:
            m = max(values, default=0) + 1
        return cls(values, m)

    def to_json(self) -> dict:
        return {"colors": {str(v): c for v, c in enumerate(self.colors)}}


def load_coloring(path: str | Path, n: int) -> Coloring:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise GraphError(f"cannot read colouring {path}: {exc}") from exc
    if not isinstance(data, dict) or "colors" not in data:
        raise GraphError("colouring JSON needs a 'colors' object")
    return Coloring.from_mapping(n, data["colors"], data.get("m"))


def apply_coloring(G: LabeledGraph, coloring: Coloring | Mapping | str | Path) -> LabeledGraph:
    """Install colours on G; they also become visible to formulas as ``color:k`` labels."""
    if isinstance(coloring, (str, Path)):
        coloring = load_coloring(coloring, G.n)
    elif not isinstance(coloring, Coloring):
        coloring = Coloring.from_mapping(G.n, coloring)
    if len(coloring.colors) != G.n:
        raise GraphError("colouring size does not match the graph")
    return G.with_colors(coloring.colors)


def uniform_coloring(G: LabeledGraph) -> Coloring:
    return Coloring((0,) * G.n, 1)


def atomic_type_coloring(G: LabeledGraph) -> Coloring:
    """One colour per distinct label set, numbered in sorted label-set order."""
    kinds = sorted({tuple(sorted(ls)) for ls in G.labels})
    index = {k: i for i, k in enumerate(kinds)}
    return Coloring(tuple(index[tuple(sorted(ls))] for ls in G.labels), max(len(kinds), 1))


PRESETS = {"uniform": uniform_coloring, "atomic": atomic_type_coloring}


def dn_census(G: LabeledGraph, r: int, rounds: int | None = None) -> dict:
    """|DN_r[u, v]| for every same-coloured pair u < v, with a locality cross-check.

    Each row compares the differential game decided on G[DN_r[u, v]] with the
    game on all of G; any disagreement is reported in the aggregate block.
    """
    if not G.is_colored:
        raise GraphError("dn census needs a coloured graph")
    if r < 1:
        raise GraphError("radius must be at least 1")
    rounds = r if rounds is None else rounds
    rows = []
    for u in range(G.n):
        for v in range(u + 1, G.n):
            if G.colors[u] != G.colors[v]:
                continue
            dn = differential_neighborhood_mask(G, u, v, r, closed=True)
            local = difflocal_winner(G, u, v, rounds, "direct", radius=r)
            full = d_winner(G, [u], [v], rounds)
            rows.append({
                "u": u, "v": v,
                "dn_size": bin(dn).count("1"),
                "local": local.value,
                "full": full.value,
                "agree": local is full,
            })
    sizes = [row["dn_size"] for row in rows]
    return {
        "n": G.n,
        "r": r,
        "rounds": rounds,
        "rows": rows,
        "aggregate": {
            "pairs": len(rows),
            "max_dn": max(sizes, default=0),
            "mean_dn": (sum(sizes) / len(sizes)) if sizes else 0.0,
            "disagreements": [[row["u"], row["v"]] for row in rows if not row["agree"]],
            "duplicator_pairs": sum(1 for row in rows if row["full"] == Winner.DUPLICATOR.value),
        },
    }
