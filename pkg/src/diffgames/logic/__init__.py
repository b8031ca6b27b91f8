"""FO logic over labelled graphs: syntax, parsing, semantics and constructions."""

from .formula import (
    FALSE, TRUE, And, Bot, Edge, Eq, Exists, Forall, Formula, Iff, Implies, Label, Not, Or, Top,
    conj, disj, free_vars, is_quantifier_free, is_well_named, labels_used, quantifier_rank,
    rename_free, to_text,
)
from .parser import FormulaSyntaxError, load_formula, parse_formula
from .semantics import (
    FormulaError, PrenexSentence, apply_interpretation, compile_formula, evaluate, make_env,
    pin_label, pin_nbr_label, pin_tuple_labels, rewrite_with_pinned_tuple, to_prenex, xi_formula,
)
