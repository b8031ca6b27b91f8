"""Differential games and evaluation-tree FO model checking on small graphs."""

from .difflocal import Coloring, apply_coloring, dn_census
from .engine import difflocal_winner, full_tree, full_tree_mc, model_check, reduced_tree
from .games import GameKind, Winner, d_winner, ef_winner, game_trace, l_of, sd_winner, winner
from .graph import GraphError, LabeledGraph, differential_neighborhood, generate, half_graph, load_graph, path
from .logic import evaluate, parse_formula, to_prenex, xi_formula
from .relations import components, fo_type_equiv, greedy_mis, relation_graph, representatives

__version__ = "0.1.0"
