"""First-order formulas over the vocabulary {E, =, L_a}."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce


class Formula:
    __slots__ = ()

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __invert__(self):
        return Not(self)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Edge(Formula):
    x: str
    y: str


@dataclass(frozen=True)
class Eq(Formula):
    x: str
    y: str


@dataclass(frozen=True)
class Label(Formula):
    label: str
    x: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


TRUE = Top()
FALSE = Bot()

ATOMS = (Edge, Eq, Label, Top, Bot)
BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (Exists, Forall)


def conj(parts) -> Formula:
    """Left-nested conjunction; the empty conjunction is ``true``."""
    parts = list(parts)
    return reduce(And, parts) if parts else TRUE


def disj(parts) -> Formula:
    parts = list(parts)
    return reduce(Or, parts) if parts else FALSE


def free_vars(f: Formula) -> frozenset:
    if isinstance(f, (Edge, Eq)):
        return frozenset((f.x, f.y))
    if isinstance(f, Label):
        return frozenset((f.x,))
    if isinstance(f, (Top, Bot)):
        return frozenset()
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, BINARY):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, QUANTIFIERS):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


def quantifier_rank(f: Formula) -> int:
    if isinstance(f, ATOMS):
        return 0
    if isinstance(f, Not):
        return quantifier_rank(f.body)
    if isinstance(f, BINARY):
        return max(quantifier_rank(f.left), quantifier_rank(f.right))
    if isinstance(f, QUANTIFIERS):
        return 1 + quantifier_rank(f.body)
    raise TypeError(f"not a formula: {f!r}")


def is_quantifier_free(f: Formula) -> bool:
    return quantifier_rank(f) == 0


def is_well_named(f: Formula, bound: frozenset = frozenset()) -> bool:
    """No variable is quantified twice along one root-to-leaf path."""
    if isinstance(f, ATOMS):
        return True
    if isinstance(f, Not):
        return is_well_named(f.body, bound)
    if isinstance(f, BINARY):
        return is_well_named(f.left, bound) and is_well_named(f.right, bound)
    if f.var in bound:
        return False
    return is_well_named(f.body, bound | {f.var})


def labels_used(f: Formula) -> frozenset:
    if isinstance(f, Label):
        return frozenset((f.label,))
    if isinstance(f, ATOMS):
        return frozenset()
    if isinstance(f, Not):
        return labels_used(f.body)
    if isinstance(f, BINARY):
        return labels_used(f.left) | labels_used(f.right)
    return labels_used(f.body)


def rename_free(f: Formula, mapping: dict) -> Formula:
    """Capture-avoiding only under the assumption that targets are not bound in ``f``."""
    if isinstance(f, Edge):
        return Edge(mapping.get(f.x, f.x), mapping.get(f.y, f.y))
    if isinstance(f, Eq):
        return Eq(mapping.get(f.x, f.x), mapping.get(f.y, f.y))
    if isinstance(f, Label):
        return Label(f.label, mapping.get(f.x, f.x))
    if isinstance(f, (Top, Bot)):
        return f
    if isinstance(f, Not):
        return Not(rename_free(f.body, mapping))
    if isinstance(f, BINARY):
        return type(f)(rename_free(f.left, mapping), rename_free(f.right, mapping))
    inner = {k: v for k, v in mapping.items() if k != f.var}
    return type(f)(f.var, rename_free(f.body, inner))


# -- printing ----------------------------------------------------------------

_OPS = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def to_text(f: Formula) -> str:
    """Fully parenthesised text that ``parse_formula`` maps back to ``f``."""
    if isinstance(f, Edge):
        return f"E({f.x},{f.y})"
    if isinstance(f, Eq):
        return f"{f.x}={f.y}"
    if isinstance(f, Label):
        return f"L[{f.label}]({f.x})"
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, Not):
        return "!" + _wrap(f.body)
    if isinstance(f, BINARY):
        return f"{_wrap(f.left)} {_OPS[type(f)]} {_wrap(f.right)}"
    q = "exists" if isinstance(f, Exists) else "forall"
    return f"{q} {f.var}. {to_text(f.body)}"


def _wrap(f: Formula) -> str:
    if isinstance(f, (Edge, Label, Top, Bot, Not)):
        return to_text(f)
    return f"({to_text(f)})"
