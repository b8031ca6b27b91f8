import jsonschema
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_graphs
from diffgames.corpus import SENTENCES
from diffgames.engine import (
    SizeGuardError, difflocal_winner, full_tree, full_tree_mc, gq_labels, iso_type, model_check,
    reduced_tree, verdict_from_tree,
)
from diffgames.games import Winner, d_winner
from diffgames.graph import GraphError, LabeledGraph, all_graphs_up_to, edgeless, half_graph, path
from diffgames.logic import evaluate, parse_formula, to_prenex
from diffgames.relations import exact_representatives
from diffgames.schemas import load_schema


def test_iso_type_examples(P3):
    G = LabeledGraph.from_edges(3, [], {0: {"a"}, 2: {"a"}})
    assert iso_type(G, (0,)) == iso_type(G, (2,))
    assert iso_type(P3, (0, 1)) == iso_type(P3, (1, 2))
    assert iso_type(P3, (0, 1)) != iso_type(P3, (0, 2))


def test_full_tree_examples():
    assert full_tree_mc(path(2), "exists x. true")
    assert full_tree_mc(path(3), "forall x. exists y. E(x,y)")
    assert not full_tree_mc(LabeledGraph.from_edges(4, [(0, 1), (1, 2)]), "forall x. exists y. E(x,y)")


def test_full_tree_shape():
    T = full_tree(path(3), 2)
    assert T.size() == 1 + 3 + 9 and T.level_branching() == [3, 3] and T.leaf_depths() == {2}


def test_full_tree_guard():
    with pytest.raises(SizeGuardError):
        full_tree(path(10), 3, max_nodes=100)


def test_full_tree_matches_evaluate():
    for G in all_graphs_up_to(4):
        for text in SENTENCES[:20]:
            assert full_tree_mc(G, text) == evaluate(G, parse_formula(text))


def test_reduced_depth_one_unlabelled():
    T = reduced_tree(path(4), 1)
    assert T.leaf_depths() == {1} and [c.vertex for c in T.root.children] == [0]


def test_reduced_tree_leaves_at_depth_q():
    for q in range(4):
        assert reduced_tree(half_graph(2), q).leaf_depths() == {q}


def test_reduced_p3_matches_full():
    G = path(3)
    T = reduced_tree(G, 2)
    for text in SENTENCES:
        phi = to_prenex(parse_formula(text))
        if phi.q == 2:
            assert verdict_from_tree(T, G, phi) == full_tree_mc(G, phi)


def test_branching_bounded_by_reps():
    seen = []

    def rep(G, vbar, p):
        out = exact_representatives(G, vbar, p)
        seen.append(len(out))
        return out

    T = reduced_tree(half_graph(3), 2, rep)
    assert max(T.level_branching()) <= max(seen)
    assert T.rep_calls == len(seen)


def test_verdict_on_full_tree_and_trivial_matrix():
    G = path(3)
    for text in SENTENCES:
        phi = to_prenex(parse_formula(text))
        assert verdict_from_tree(full_tree(G, phi.q), G, phi) == full_tree_mc(G, phi)
    phi = to_prenex(parse_formula("exists x. exists y. true"))
    assert verdict_from_tree(reduced_tree(G, 2), G, phi)


def test_verdict_height_mismatch():
    with pytest.raises(ValueError):
        verdict_from_tree(full_tree(path(2), 1), path(2), to_prenex(parse_formula("exists x. exists y. E(x,y)")))


def test_reduced_child_labels_match_full_tree():
    # at tiny n every reduced node has the same (G, q)-label as the full-tree node on its path
    for G in all_graphs_up_to(4):
        for q in (1, 2):
            T_full, T_red = full_tree(G, q), reduced_tree(G, q)
            full, red = gq_labels(T_full, G), gq_labels(T_red, G)
            stack = [(T_red.root, T_full.root)]
            while stack:
                r_node, f_node = stack.pop()
                assert red[r_node] == full[f_node]
                stack.extend((c, f_node.children[c.vertex]) for c in r_node.children)


# -- model_check ---------------------------------------------------------------


def test_mc_examples():
    for engine in ("brute", "fulltree", "difftree"):
        v, diag = model_check(path(3), "exists x. forall y. !E(x,y)", engine)
        assert v is False and diag["engine"] == engine
        jsonschema.validate(diag, load_schema("diagnostics"))
        assert model_check(half_graph(3), "exists x. forall y. (E(x,y) | x=y)", engine)[0] is False


def test_mc_edgeless_branching():
    # no pins at the root, so one child; below it pinned vertices split off by equality
    _, diag = model_check(edgeless(5), "forall x. exists y. forall z. (E(x,y) | z=z)", "difftree")
    assert diag["level_branching"][0] == 1
    T = reduced_tree(edgeless(5), 3, exact_representatives)
    assert diag["level_branching"] == T.level_branching() == [1, 2, 3]


def test_mc_unknown_engine():
    with pytest.raises(ValueError):
        model_check(path(2), "true", "quantum")


def test_mc_difflocal_needs_colours():
    with pytest.raises(ValueError):
        model_check(path(3), "exists x. true", "difflocal")


@settings(max_examples=50, deadline=None)
@given(small_graphs(max_n=6, labels=True), st.sampled_from(SENTENCES))
def test_engines_agree(G, text):
    want = evaluate(G, parse_formula(text))
    assert model_check(G, text, "difftree")[0] == want
    assert model_check(G.with_colors([0] * G.n), text, "difflocal")[0] == want


# -- local games ---------------------------------------------------------------


def test_difflocal_p4_ends():
    G = path(4).with_colors([0] * 4)
    assert difflocal_winner(G, 0, 3, 1) is d_winner(G, (0,), (3,), 1)


def test_difflocal_modes_agree_small():
    for G in all_graphs_up_to(4):
        G = G.with_colors([0] * G.n)
        for u in range(G.n):
            for v in range(u + 1, G.n):
                for r in (1, 2):
                    assert difflocal_winner(G, u, v, r, "direct") is difflocal_winner(G, u, v, r, "xi")


def test_difflocal_errors():
    G = path(3).with_colors([0, 1, 0])
    with pytest.raises(GraphError):
        difflocal_winner(G, 0, 1, 1)
    with pytest.raises(ValueError):
        difflocal_winner(G, 0, 2, 1, mode="bogus")
    assert difflocal_winner(G, 1, 1, 2) is Winner.DUPLICATOR
