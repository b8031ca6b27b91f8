"""Winners of m-round EF, semi-differential and differential games.

All three games are solved by the same memoised alternating search. A position is
the list of played pairs (a_i, b_i); since neither the win condition nor the legal
moves depend on the order of the pairs, the memo key is the set of pairs (and, for
games on a single graph, the lesser of that set and its a/b mirror image).

A position whose pairs already violate the partial isomorphism is lost for
Duplicator, whatever the number of rounds left. Otherwise Duplicator wins when
no rounds are left or Spoiler has no legal move.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from .graph import GraphError, LabeledGraph, bits


class Winner(enum.Enum):
    SPOILER = "Spoiler"
    DUPLICATOR = "Duplicator"

    def __str__(self):
        return self.value


class GameKind(str, enum.Enum):
    EF = "ef"
    SD = "sd"
    D = "d"


class GameError(ValueError):
    pass


class IllegalMoveError(GameError):
    pass


def l_of(m: int) -> int:
    """Round inflation l(0) = 0, l(i+1) = 2 l(i) + 1."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    value = 0
    for _ in range(m):
        value = 2 * value + 1
    return value


def _label_ids(*graphs: LabeledGraph) -> list[list[int]]:
    ids: dict[frozenset, int] = {}
    return [[ids.setdefault(ls, len(ids)) for ls in g.atom_labels] for g in graphs]


def partial_iso(G: LabeledGraph, a: Sequence[int], H: LabeledGraph, b: Sequence[int]) -> bool:
    """Is a_i -> b_i a well-defined, label-preserving partial isomorphism from G to H?"""
    if len(a) != len(b):
        raise GameError("tuples must have equal length")
    for v in a:
        G.check_vertex(v)
    for w in b:
        H.check_vertex(w)
    for i in range(len(a)):
        if G.atom_labels[a[i]] != H.atom_labels[b[i]]:
            return False
        for j in range(i):
            if (a[i] == a[j]) != (b[i] == b[j]):
                return False
            if G.adjacent(a[i], a[j]) != H.adjacent(b[i], b[j]):
                return False
    return True


class GameSolver:
    """Memoised solver for one game kind on a fixed graph (or pair of graphs for EF)."""

    def __init__(self, kind: GameKind | str, G: LabeledGraph, H: LabeledGraph | None = None):
        self.kind = GameKind(kind)
        if self.kind is not GameKind.EF and H is not None and H != G:
            raise GameError("semi-differential and differential games use a single graph")
        self.G = G
        self.H = G if H is None else H
        self.single = self.H == G
        self.lab_g, self.lab_h = _label_ids(G, self.H)
        self.memo: dict = {}
        self.positions = 0

    # -- position helpers ------------------------------------------------------

    def extends(self, pairs: Iterable[tuple[int, int]], v: int, w: int) -> bool:
        """Can (v, w) be added to ``pairs`` without breaking the partial isomorphism?"""
        if self.lab_g[v] != self.lab_h[w]:
            return False
        gv, hw = self.G.nbrs[v], self.H.nbrs[w]
        for a, b in pairs:
            if (a == v) != (b == w):
                return False
            if ((gv >> a) & 1) != ((hw >> b) & 1):
                return False
        return True

    def is_iso(self, pairs: Sequence[tuple[int, int]]) -> bool:
        for k, (v, w) in enumerate(pairs):
            if not self.extends(pairs[:k], v, w):
                return False
        return True

    def _key(self, pairs: frozenset, r: int):
        if self.single:
            mirror = frozenset((b, a) for a, b in pairs)
            if sorted(mirror) < sorted(pairs):
                pairs = mirror
        return pairs, r

    def spoiler_options(self, pairs) -> list[tuple[int, int, int]]:
        """(d_mask, side, vertex) triples; side 0 = a-move, 1 = b-move.

        For EF the mask is unused and vertices range over G (a) or H (b).
        """
        if self.kind is GameKind.EF:
            return ([(0, 0, v) for v in range(self.G.n)]
                    + [(0, 1, w) for w in range(self.H.n)])
        nbrs = self.G.nbrs
        if self.kind is GameKind.SD:
            union = 0
            for a, b in pairs:
                union |= nbrs[a] ^ nbrs[b]
            return [(union, side, v) for side in (0, 1) for v in bits(union)]
        masks = sorted({nbrs[a] ^ nbrs[b] for a, b in pairs} - {0})
        return [(d, side, v) for d in masks for side in (0, 1) for v in bits(d)]

    def replies(self, d_mask: int, side: int) -> list[int]:
        if self.kind is GameKind.D:
            return bits(d_mask)
        return list(range(self.H.n if side == 0 else self.G.n))

    # -- search ----------------------------------------------------------------

    def duplicator_wins(self, pairs: Sequence[tuple[int, int]], rounds: int) -> bool:
        pairs = list(pairs)
        if not self.is_iso(pairs):
            return False
        return self._dup(frozenset(pairs), rounds)

    def _dup(self, pairs: frozenset, r: int) -> bool:
        # invariant: ``pairs`` is a partial isomorphism
        if r == 0:
            return True
        key = self._key(pairs, r)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.positions += 1
        result = True
        for d, side, v in self.spoiler_options(pairs):
            answered = False
            for w in self.replies(d, side):
                new = (v, w) if side == 0 else (w, v)
                if self.extends(pairs, *new) and self._dup(pairs | {new}, r - 1):
                    answered = True
                    break
            if not answered:
                result = False
                break
        self.memo[key] = result
        return result


@lru_cache(maxsize=512)
def solver(kind: GameKind | str, G: LabeledGraph, H: LabeledGraph | None = None) -> GameSolver:
    """Shared solver per (kind, graph); the memo table persists across calls."""
    return GameSolver(kind, G, H)


def _check_tuples(G, a, H, b, m, need_nonempty):
    if len(a) != len(b):
        raise GameError("tuples must have equal length")
    if need_nonempty and not a:
        raise GameError("(semi-)differential games need nonempty starting tuples")
    if m < 0:
        raise GameError("rounds must be nonnegative")
    for v in a:
        G.check_vertex(v)
    for w in b:
        H.check_vertex(w)


def _winner(flag: bool) -> Winner:
    return Winner.DUPLICATOR if flag else Winner.SPOILER


def ef_winner(G: LabeledGraph, a: Sequence[int], H: LabeledGraph, b: Sequence[int], m: int) -> Winner:
    _check_tuples(G, a, H, b, m, False)
    s = solver(GameKind.EF, G, None if H == G else H)
    return _winner(s.duplicator_wins(list(zip(a, b)), m))


def sd_winner(G: LabeledGraph, a: Sequence[int], b: Sequence[int], m: int) -> Winner:
    _check_tuples(G, a, G, b, m, True)
    return _winner(solver(GameKind.SD, G).duplicator_wins(list(zip(a, b)), m))


def d_winner(G: LabeledGraph, a: Sequence[int], b: Sequence[int], m: int) -> Winner:
    _check_tuples(G, a, G, b, m, True)
    return _winner(solver(GameKind.D, G).duplicator_wins(list(zip(a, b)), m))


def winner(kind: GameKind | str, G: LabeledGraph, a, b, m: int, H: LabeledGraph | None = None) -> Winner:
    kind = GameKind(kind)
    if kind is GameKind.EF:
        return ef_winner(G, a, G if H is None else H, b, m)
    return (sd_winner if kind is GameKind.SD else d_winner)(G, a, b, m)


# -- transcripts ---------------------------------------------------------------


@dataclass
class MoveRecord:
    round: int
    player: str
    side: str
    index_i: int | None
    vertex: int
    legal: bool
    d_set: list[int] | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None or k == "index_i"}


@dataclass
class Transcript:
    kind: str
    rounds: int
    a: list[int]
    b: list[int]
    moves: list[MoveRecord] = field(default_factory=list)
    winner: Winner | None = None
    error: str | None = None

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "rounds": self.rounds,
            "start": {"a": list(self.a), "b": list(self.b)},
            "moves": [mv.to_json() for mv in self.moves],
            "winner": None if self.winner is None else self.winner.value,
        }
        if self.error:
            out["error"] = self.error
        return out


def _spoiler_moves_indexed(s: GameSolver, a: list[int], b: list[int]):
    """Legal Spoiler moves (index, side, vertex) in the fixed trace order."""
    if s.kind is GameKind.EF:
        for side, n in ((0, s.G.n), (1, s.H.n)):
            for v in range(n):
                yield None, side, v
        return
    nbrs = s.G.nbrs
    for i in range(len(a)):
        d = nbrs[a[i]] ^ nbrs[b[i]]
        for side in (0, 1):
            for v in bits(d):
                yield i, side, v


def game_trace(kind: GameKind | str, G: LabeledGraph, a: Sequence[int], b: Sequence[int], m: int,
               spoiler: Sequence[tuple] | None = None, duplicator: Sequence[int] | None = None,
               H: LabeledGraph | None = None) -> Transcript:
    """Play the game move by move and record it.

    ``spoiler`` is an optional script of (index, side, vertex) moves, side being
    "a" or "b" (index is ignored for EF); ``duplicator`` an optional script of
    reply vertices. Unscripted moves follow optimal play from the memo table,
    taking the first winning move in order (index, side a then b, vertex).
    An illegal scripted move is recorded with ``legal=False`` and ends the trace.
    """
    kind = GameKind(kind)
    if kind is GameKind.EF:
        _check_tuples(G, a, G if H is None else H, b, m, False)
        s = solver(kind, G, None if H is None or H == G else H)
    else:
        _check_tuples(G, a, G, b, m, True)
        s = solver(kind, G)
    a, b = list(a), list(b)
    t = Transcript(kind.value, m, list(a), list(b))
    spoiler = list(spoiler) if spoiler is not None else None
    duplicator = list(duplicator) if duplicator is not None else None
    nbrs = s.G.nbrs

    for rnd in range(1, m + 1):
        pairs = list(zip(a, b))
        if not s.is_iso(pairs):
            break
        options = list(_spoiler_moves_indexed(s, a, b))
        if not options and spoiler is None:
            break
        if spoiler is not None and rnd - 1 < len(spoiler):
            i, side_name, v = spoiler[rnd - 1]
            side = 0 if side_name == "a" else 1
            if kind is GameKind.EF:
                i = None
            reason = None
            if i is not None and not 0 <= i < len(a):
                reason = f"index {i} out of range"
            elif not 0 <= v < (s.G.n if side == 0 else s.H.n):
                reason = "vertex out of range"
            elif i is not None and not (nbrs[a[i]] ^ nbrs[b[i]]) >> v & 1:
                reason = "move not in D(a_i,b_i)"
            d = None if i is None or reason else nbrs[a[i]] ^ nbrs[b[i]]
            rec = MoveRecord(rnd, "Spoiler", side_name, i if kind is not GameKind.EF else None, v,
                             reason is None, None if d is None else bits(d), reason)
            t.moves.append(rec)
            if reason:
                t.error = reason
                return t
        else:
            if not options:
                break
            chosen = None
            for i, side, v in options:
                d = None if i is None else nbrs[a[i]] ^ nbrs[b[i]]
                if not any(_reply_wins(s, pairs, side, v, w, rnd, m)
                           for w in s.replies(d or 0, side)):
                    chosen = (i, side, v)
                    break
            i, side, v = chosen or options[0]
            d = None if i is None else nbrs[a[i]] ^ nbrs[b[i]]
            t.moves.append(MoveRecord(rnd, "Spoiler", "ab"[side], i, v, True,
                                      None if d is None else bits(d)))

        side = 0 if t.moves[-1].side == "a" else 1
        legal_replies = s.replies(d or 0, side)
        if duplicator is not None and rnd - 1 < len(duplicator):
            w = duplicator[rnd - 1]
            reason = None
            if not 0 <= w < (s.H.n if side == 0 else s.G.n):
                reason = "vertex out of range"
            elif w not in legal_replies:
                reason = "reply not in D(a_i,b_i)"
            t.moves.append(MoveRecord(rnd, "Duplicator", "ba"[side], i, w, reason is None,
                                      None if d is None else bits(d), reason))
            if reason:
                t.error = reason
                return t
        else:
            good = [w for w in legal_replies if _reply_wins(s, pairs, side, v, w, rnd, m)]
            w = good[0] if good else legal_replies[0]
            t.moves.append(MoveRecord(rnd, "Duplicator", "ba"[side], i, w, True,
                                      None if d is None else bits(d)))
        if side == 0:
            a.append(v)
            b.append(w)
        else:
            a.append(w)
            b.append(v)

    t.winner = _winner(s.is_iso(list(zip(a, b))))
    return t


def _reply_wins(s: GameSolver, pairs, side, v, w, rnd, m) -> bool:
    new = (v, w) if side == 0 else (w, v)
    return s.duplicator_wins(pairs + [new], m - rnd)


# -- run enumeration ---------------------------------------------------------------


def reachable_vertices(kind: GameKind | str, G: LabeledGraph, a: Sequence[int], b: Sequence[int],
                       m: int) -> list[int]:
    """Every vertex played in some legal run of up to m rounds (D or SD game).

    Runs are followed even past a broken partial isomorphism, so this
    over-approximates the positions that matter for the winner.
    """
    kind = GameKind(kind)
    if kind is GameKind.EF:
        raise GameError("EF moves are unrestricted; every vertex is reachable")
    _check_tuples(G, a, G, b, m, True)
    s = GameSolver(kind, G)
    seen = 0
    frontier = {frozenset(zip(a, b))}
    for v in list(a) + list(b):
        seen |= 1 << v
    for _ in range(m):
        nxt = set()
        for pairs in frontier:
            for d, side, v in s.spoiler_options(pairs):
                for w in s.replies(d, side):
                    seen |= (1 << v) | (1 << w)
                    nxt.add(pairs | {(v, w) if side == 0 else (w, v)})
        frontier = nxt
    return bits(seen)
