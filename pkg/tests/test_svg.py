import re

from conftest import arcs_from_order, circle_point, segments_properly_intersect

from chordlink.chords import brute_force_chord_oracle, distribute_endpoints
from chordlink.layout import ForceParams
from chordlink.model import Edge, Graph, LayoutState, Point
from chordlink.session import LabelPolicy, Session
from chordlink.svg import export_svg, thickness_class, weight_thresholds


def test_single_node_single_circle():
    state = LayoutState(Graph(["a"], []), {"a": Point(0.0, 0.0)}, {})
    svg = export_svg(state)
    assert svg.count("<circle") == 1
    assert svg.startswith("<svg")
    assert svg.rstrip().endswith("</svg>")


def test_equal_weights_single_middle_class():
    thresholds = weight_thresholds([2.0, 2.0, 2.0])
    assert thresholds is None
    assert thickness_class(2.0, thresholds) == 2


def test_thickness_monotone_and_at_most_five():
    weights = [0.5, 1.0, 2.0, 3.5, 8.0, 13.0, 21.0]
    thresholds = weight_thresholds(weights)
    classes = [thickness_class(w, thresholds) for w in sorted(weights)]
    assert classes == sorted(classes)
    assert set(classes) <= {0, 1, 2, 3, 4}
    assert min(classes) == 0 and max(classes) == 4


def test_equal_weight_graph_renders_middle_width():
    g = Graph(["a", "b", "c"], [("a", "b", 5.0), ("b", "c", 5.0)])
    state = LayoutState(g, {"a": Point(0, 0), "b": Point(30, 0), "c": Point(60, 10)}, {})
    svg = export_svg(state)
    widths = set(re.findall(r'<line[^>]*stroke-width="([\d.]+)"', svg))
    assert widths == {"2.400"}


def test_cluster_export_chords_do_not_intersect():
    # crossing-free reference assignment survives into drawn endpoint geometry
    arcs = arcs_from_order(["4", "1a", "5", "1b", "3a", "2a", "2b", "3b"])
    edges = [(i, Edge(u, v, 1.0)) for i, (u, v) in enumerate(
        [("1", "2"), ("1", "4"), ("2", "3"), ("2", "5"), ("3", "4"), ("4", "5")])]
    oracle = brute_force_chord_oracle(arcs, edges)
    final = distribute_endpoints(oracle, arcs)
    for i in range(len(final)):
        for j in range(i + 1, len(final)):
            assert not segments_properly_intersect(
                circle_point(final[i].from_angle), circle_point(final[i].to_angle),
                circle_point(final[j].from_angle), circle_point(final[j].to_angle),
            )


def test_full_scene_elements():
    g = Graph(
        ["a", "b", "c", "d", "e"],
        [("a", "b", 1.0), ("b", "c", 2.0), ("a", "c", 3.0), ("c", "d", 4.0), ("d", "e", 5.0)],
    )
    s = Session()
    s.load_graph(g)
    s.run_layout(ForceParams(iterations=120, seed=6))
    cid = s.select_cluster(["a", "b", "c"])
    svg = export_svg(s.state, LabelPolicy("all"))
    assert svg.count('class="arc"') == 3
    assert svg.count('class="chord"') == 3
    assert svg.count("<linearGradient") == 3
    assert svg.count('class="node"') == 2  # d and e
    assert "<text" in svg

    s.collapse(cid)
    svg2 = export_svg(s.state)
    assert svg2.count('class="cluster-node"') == 1
    assert svg2.count('class="arc"') == 0


def test_gradient_endpoints_match_chord_colors():
    g = Graph(["a", "b", "c"], [("a", "b", 1.0), ("b", "c", 1.0), ("a", "c", 1.0)])
    s = Session()
    s.load_graph(g)
    s.run_layout(ForceParams(iterations=100, seed=3))
    cid = s.select_cluster(["a", "b", "c"])
    colors = s.state.cluster_layouts[cid].colors
    svg = export_svg(s.state)
    for stop_color in set(re.findall(r'stop-color="(#[0-9a-f]{6})"', svg)):
        assert stop_color in colors.values()


def test_render_empty_state():
    state = LayoutState(Graph([], []), {}, {})
    svg = export_svg(state)
    assert svg.startswith("<svg") and "</svg>" in svg
