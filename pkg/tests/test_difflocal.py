import json

import jsonschema
import pytest

from diffgames.difflocal import (
    Coloring, apply_coloring, atomic_type_coloring, dn_census, load_coloring, uniform_coloring,
)
from diffgames.graph import GraphError, LabeledGraph, all_graphs_up_to, edgeless, path
from diffgames.schemas import load_schema


def test_uniform_coloring():
    G = apply_coloring(path(4), uniform_coloring(path(4)))
    assert G.colors == (0, 0, 0, 0)


def test_atomic_type_coloring():
    G = path(4).with_labels({1: {"red"}, 3: {"red"}})
    assert atomic_type_coloring(G).colors == (0, 1, 0, 1)


def test_partial_coloring_file(tmp_path):
    (tmp_path / "c.json").write_text(json.dumps({"colors": {"0": 0, "1": 1}}))
    with pytest.raises(GraphError):
        load_coloring(tmp_path / "c.json", 3)
    with pytest.raises(GraphError):
        Coloring.from_mapping(2, {0: 0, 1: 0, 5: 0})
    with pytest.raises(GraphError):
        Coloring((0, 3), 2)


def test_coloring_round_trip(tmp_path):
    col = Coloring((0, 1, 1), 2)
    (tmp_path / "c.json").write_text(json.dumps(col.to_json()))
    G = apply_coloring(path(3), tmp_path / "c.json")
    assert LabeledGraph.from_json(json.loads(json.dumps(G.to_json()))).colors == (0, 1, 1)


def test_census_edgeless():
    G = apply_coloring(edgeless(4), uniform_coloring(edgeless(4)))
    rows = dn_census(G, 2)["rows"]
    assert len(rows) == 6 and all(row["dn_size"] == 2 for row in rows)


def test_census_p4_pair():
    G = apply_coloring(path(4), uniform_coloring(path(4)))
    report = dn_census(G, 1)
    row = next(r for r in report["rows"] if (r["u"], r["v"]) == (0, 3))
    assert row["dn_size"] == 4
    jsonschema.validate(report, load_schema("census"))


def test_census_agreement_uniform():
    for G in all_graphs_up_to(5):
        G = apply_coloring(G, uniform_coloring(G))
        for r in (1, 2):
            assert dn_census(G, r)["aggregate"]["disagreements"] == []


def test_census_skips_different_colours():
    G = path(3).with_colors([0, 1, 0])
    assert [(r["u"], r["v"]) for r in dn_census(G, 1)["rows"]] == [(0, 2)]


def test_census_preconditions():
    with pytest.raises(GraphError):
        dn_census(path(3), 1)
    with pytest.raises(GraphError):
        dn_census(path(3).with_colors([0, 0, 0]), 0)
