from pathlib import Path

import pytest

from chordlink.errors import GmlError
from chordlink.gml import parse_document, parse_gml, write_document, write_gml

DATA = Path(__file__).parent / "data"


def test_minimal_document():
    g = parse_gml("graph [ node [ id 1 ] node [ id 2 ] edge [ source 1 target 2 ] ]")
    assert g.nodes == ("1", "2")
    assert g.m == 1
    assert g.edges[0].weight == 1.0


def test_dangling_endpoint():
    with pytest.raises(GmlError, match="undeclared"):
        parse_gml("graph [ node [ id 1 ] edge [ source 1 target 9 ] ]")


def test_duplicate_node_id():
    with pytest.raises(GmlError, match="duplicate"):
        parse_gml("graph [ node [ id 1 ] node [ id 1 ] ]")


def test_syntax_error_reports_location():
    with pytest.raises(GmlError) as err:
        parse_gml("graph [\n  node [ id 1\n")
    assert err.value.line >= 2


def test_weight_key_preferred_over_value():
    g = parse_gml(
        "graph [ node [ id 1 ] node [ id 2 ] "
        "edge [ source 1 target 2 value 3.0 weight 7.0 ] ]"
    )
    assert g.edges[0].weight == 7.0


def test_value_used_when_no_weight():
    g = parse_gml("graph [ node [ id 1 ] node [ id 2 ] edge [ source 1 target 2 value 3.5 ] ]")
    assert g.edges[0].weight == 3.5


def test_labels_default_to_id():
    g = parse_gml('graph [ node [ id 7 ] node [ id 8 label "x" ] ]')
    assert g.labels["7"] == "7"
    assert g.labels["8"] == "x"


def test_parallel_edges_collapse_with_summed_weight():
    g = parse_gml(
        "graph [ node [ id 1 ] node [ id 2 ] "
        "edge [ source 1 target 2 weight 2.0 ] edge [ source 2 target 1 weight 3.0 ] ]"
    )
    assert g.m == 1
    assert g.edges[0].weight == 5.0


def test_self_loop_dropped():
    g = parse_gml("graph [ node [ id 1 ] edge [ source 1 target 1 ] ]")
    assert g.m == 0


def test_comments_and_strings():
    g = parse_gml('# header\ngraph [ # inline\n node [ id 1 label "a b [x]" ] ]')
    assert g.labels["1"] == "a b [x]"


def test_unknown_keys_pass_through_document():
    text = 'graph [ directed 0 node [ id 1 extra "kept" ] ]'
    doc = parse_document(text)
    round_tripped = parse_document(write_document(doc))
    graph_rec = round_tripped.root.first("graph")
    assert graph_rec.first("directed") == 0
    assert graph_rec.all("node")[0].first("extra") == "kept"


def test_corpus_counts():
    g = parse_gml((DATA / "fiscal_scale.gml").read_text(encoding="utf-8"))
    assert len(g.nodes) == 174
    assert g.m == 200


def test_round_trip_idempotent_on_corpus():
    g = parse_gml((DATA / "fiscal_scale.gml").read_text(encoding="utf-8"))
    g2 = parse_gml(write_gml(g))
    assert g2.nodes == g.nodes
    assert g2.labels == g.labels
    assert [(e.source, e.target, e.weight) for e in g2.edges] == \
        [(e.source, e.target, e.weight) for e in g.edges]
    # serializing again produces identical text
    assert write_gml(g2) == write_gml(g)
