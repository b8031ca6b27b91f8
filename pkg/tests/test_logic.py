import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_graphs
from oracles import naive_game
from diffgames.corpus import NON_PRENEX, OPEN_FORMULAS, SENTENCES
from diffgames.games import d_winner, Winner
from diffgames.graph import LabeledGraph, all_graphs_up_to, complement_of, edgeless, path
from diffgames.logic import (
    And, Edge, Eq, Exists, Forall, FormulaError, FormulaSyntaxError, Iff, Implies, Label, Not, Or,
    TRUE, apply_interpretation, evaluate, free_vars, is_quantifier_free, is_well_named,
    load_formula, parse_formula, pin_tuple_labels, quantifier_rank, rewrite_with_pinned_tuple,
    to_prenex, xi_formula,
)


# -- parsing -------------------------------------------------------------------


def test_parse_edge():
    assert parse_formula("E(x,y)") == Edge("x", "y")


def test_parse_prenex_shape():
    f = parse_formula("forall x. exists y. (E(x,y) & !x=y)")
    assert f == Forall("x", Exists("y", And(Edge("x", "y"), Not(Eq("x", "y")))))


def test_parse_label_iff():
    assert parse_formula("L[red](x) <-> L[red](y)") == Iff(Label("red", "x"), Label("red", "y"))


def test_precedence():
    f = parse_formula("!a=b & E(a,b) | a=b -> E(b,a) -> a=a")
    left = Or(And(Not(Eq("a", "b")), Edge("a", "b")), Eq("a", "b"))
    assert f == Implies(left, Implies(Edge("b", "a"), Eq("a", "a")))


def test_quantifier_scope_extends_right():
    assert parse_formula("exists x. E(x,y) & x=y") == Exists("x", And(Edge("x", "y"), Eq("x", "y")))


@pytest.mark.parametrize("text", ["exists x. (", "E(x)", "L[](x)", "x = ", "forall . E(x,y)", "E(x,y) )", "&"])
def test_syntax_errors(text):
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula(text)
    assert info.value.line >= 1 and info.value.column >= 1


def test_error_position_on_second_line():
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula("exists x.\n  E(x,) ")
    assert info.value.line == 2


@pytest.mark.parametrize("text", SENTENCES + NON_PRENEX + OPEN_FORMULAS)
def test_print_parse_round_trip(text):
    f = parse_formula(text)
    assert parse_formula(str(f)) == f


def test_load_formula(tmp_path):
    (tmp_path / "f.txt").write_text("# comment\nexists x. true\n")
    assert evaluate(path(1), load_formula(tmp_path / "f.txt"))


def test_rank_and_free_vars():
    f = parse_formula("forall z. exists w. (E(z,w) & (E(x_1,w) | x_2=w))")
    assert quantifier_rank(f) == 2 and free_vars(f) == {"x_1", "x_2"}
    assert not is_quantifier_free(f)
    assert not is_well_named(parse_formula("exists x. exists x. true"))


# -- evaluation ----------------------------------------------------------------


def test_eval_examples():
    assert evaluate(path(2), parse_formula("E(x,y)"), {"x": 0, "y": 1})
    assert evaluate(path(3), parse_formula("exists x. x=x"))
    assert evaluate(path(3), parse_formula("forall x. exists y. E(x,y)"))
    assert not evaluate(LabeledGraph.from_edges(4, [(0, 1), (1, 2)]), parse_formula("forall x. exists y. E(x,y)"))


def test_unknown_label_is_false():
    assert not evaluate(path(2), parse_formula("exists x. L[nope](x)"))


def test_unbound_variable():
    with pytest.raises(FormulaError):
        evaluate(path(2), parse_formula("E(x,y)"), {"x": 0})


def _brute(G, f, env):
    # textbook recursion, independent of the compiled evaluator
    if isinstance(f, Edge):
        return G.adjacent(env[f.x], env[f.y])
    if isinstance(f, Eq):
        return env[f.x] == env[f.y]
    if isinstance(f, Label):
        return f.label in G.atom_labels[env[f.x]]
    if f == TRUE:
        return True
    if isinstance(f, Not):
        return not _brute(G, f.body, env)
    if isinstance(f, And):
        return _brute(G, f.left, env) and _brute(G, f.right, env)
    if isinstance(f, Or):
        return _brute(G, f.left, env) or _brute(G, f.right, env)
    if isinstance(f, Implies):
        return (not _brute(G, f.left, env)) or _brute(G, f.right, env)
    if isinstance(f, Iff):
        return _brute(G, f.left, env) == _brute(G, f.right, env)
    q = any if isinstance(f, Exists) else all
    return q(_brute(G, f.body, {**env, f.var: v}) for v in range(G.n))


@settings(max_examples=60)
@given(small_graphs(max_n=5, labels=True), st.sampled_from(SENTENCES + NON_PRENEX))
def test_evaluate_matches_recursion(G, text):
    f = parse_formula(text)
    assert evaluate(G, f) == _brute(G, f, {})


# -- prenex --------------------------------------------------------------------


def test_prenex_keeps_prenex_input():
    pre = to_prenex(parse_formula("forall x. exists y. (E(x,y) & !x=y)"))
    assert pre.prefix == (("forall", "x_1"), ("exists", "x_2"))
    assert pre.matrix == And(Edge("x_1", "x_2"), Not(Eq("x_1", "x_2")))


def test_prenex_negation():
    pre = to_prenex(parse_formula("!(exists x. L[a](x))"))
    assert pre.prefix == (("forall", "x_1"),)
    assert pre.matrix == Not(Label("a", "x_1"))


def test_prenex_two_quantifiers_on_small_graphs():
    f = parse_formula("(exists x. E(x,x)) & (exists x. !E(x,x))")
    pre = to_prenex(f)
    assert pre.q == 2
    for G in all_graphs_up_to(4):
        assert evaluate(G, pre.to_formula()) == evaluate(G, f)


@pytest.mark.parametrize("text", NON_PRENEX)
def test_prenex_equivalent(text):
    f = parse_formula(text)
    pre = to_prenex(f)
    assert is_quantifier_free(pre.matrix)
    for G in all_graphs_up_to(4):
        G = G.with_labels({0: {"a"}})
        assert evaluate(G, pre.to_formula()) == evaluate(G, f)


def test_prenex_rejects_open():
    with pytest.raises(FormulaError):
        to_prenex(parse_formula("E(x,y)"))


# -- xi ------------------------------------------------------------------------


def test_xi_zero_is_true():
    assert xi_formula(0, 1) == TRUE


def test_xi_rank():
    for m in range(4):
        assert quantifier_rank(xi_formula(m, 1)) == 2 * m


def test_xi_p3_end_middle():
    f = xi_formula(1, 1)
    holds = evaluate(path(3), f, {"x_1": 0, "y_1": 1})
    assert holds == naive_game("d", path(3), [0], [1], 1)


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_xi_diagonal(m):
    G = LabeledGraph.from_edges(4, [(0, 1), (1, 2), (1, 3)], {2: {"red"}})
    f = xi_formula(m, 1, G.label_alphabet())
    assert all(evaluate(G, f, {"x_1": u, "y_1": u}) for u in range(G.n))


def test_xi_two_pairs_matches_game():
    G = path(4)
    f = xi_formula(1, 2)
    for a in itertools.product(range(4), repeat=2):
        for b in itertools.product(range(4), repeat=2):
            env = {"x_1": a[0], "x_2": a[1], "y_1": b[0], "y_2": b[1]}
            assert evaluate(G, f, env) == (d_winner(G, a, b, 1) is Winner.DUPLICATOR)


# -- interpretations -----------------------------------------------------------


def test_identity_interpretation_drops_labels():
    G = path(4).with_labels({1: {"red"}})
    assert apply_interpretation(G, parse_formula("E(x,y)")) == path(4)


def test_complement_interpretation():
    assert apply_interpretation(path(3), parse_formula("!E(x,y)")) == complement_of(path(3))


def test_distance_two_interpretation():
    H = apply_interpretation(path(4), parse_formula("exists z. (E(x,z) & E(z,y))"))
    # brute force over pairs: common neighbour exists
    P4 = path(4)
    want = [(u, v) for u, v in itertools.combinations(range(4), 2)
            if any(P4.adjacent(u, z) and P4.adjacent(z, v) for z in range(4))]
    assert H.edges() == want == [(0, 2), (1, 3)]


def test_interpretation_needs_two_free_vars():
    with pytest.raises(FormulaError):
        apply_interpretation(path(3), parse_formula("E(x,z)"))


# -- pinned tuples -------------------------------------------------------------


def test_pin_empty_tuple():
    assert pin_tuple_labels(path(3), ()) == path(3)


def test_pin_middle_of_p3():
    G = pin_tuple_labels(path(3), (1,))
    assert G.labels == (frozenset({"pinN:1"}), frozenset({"pin:1"}), frozenset({"pinN:1"}))


def test_pin_repeated_vertex():
    G = pin_tuple_labels(edgeless(2), (1, 1))
    assert G.labels[1] == {"pin:1", "pin:2"}


def test_rewrite_k0_is_renaming():
    f = parse_formula("exists z. E(x_1,z)")
    assert rewrite_with_pinned_tuple(f, path(3), (), target="x_1") == f


def test_rewrite_edge():
    g = rewrite_with_pinned_tuple(parse_formula("E(x_1,x_2)"), path(2), (0,))
    assert g == Label("pinN:1", "x")


def test_rewrite_eq():
    g = rewrite_with_pinned_tuple(parse_formula("x_1=x_2"), path(2), (0,))
    assert g == Label("pin:1", "x")


def test_rewrite_bound_target_rejected():
    with pytest.raises(FormulaError):
        rewrite_with_pinned_tuple(parse_formula("exists x. E(x_1,x)"), path(2), (0,))


@settings(max_examples=80)
@given(small_graphs(max_n=4, labels=True), st.sampled_from(OPEN_FORMULAS), st.data())
def test_rewrite_preserves_truth(G, text, data):
    f = parse_formula(text)
    k = max(int(v.split("_")[1]) for v in free_vars(f)) - 1
    vbar = tuple(data.draw(st.integers(0, G.n - 1)) for _ in range(k))
    g = rewrite_with_pinned_tuple(f, G, vbar)
    H = pin_tuple_labels(G, vbar)
    for u in range(G.n):
        env = {f"x_{i + 1}": v for i, v in enumerate(vbar + (u,))}
        env = {k2: v for k2, v in env.items() if k2 in free_vars(f)}
        assert evaluate(G, f, env) == evaluate(H, g, {"x": u} if free_vars(g) else {})
