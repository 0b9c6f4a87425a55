import json

import pytest

from argusense.backends.types import STANCE_AGAINST, STANCE_FOR
from argusense.deliberation import dis
from argusense.report_export import (
    args_vs_size,
    csv_text,
    distribution_csv,
    export_thread,
    least_squares,
    length_ccdf,
    stance_histogram,
    upvote_distribution,
)
from argusense.threadgraph import build_graph, postrank

from conftest import build_figure_thread, make_label, make_post
from oracles import bf_ols, validate_gexf


def three_node_thread():
    posts = [
        make_post("n1", title="root", body="root body"),
        make_post("n2", parent_id="n1", created_at=1, body="a reply"),
        make_post("n3", parent_id="n1", created_at=2, body="another reply"),
    ]
    labels = {
        "n1": make_label("n1"),
        "n2": make_label("n2", stance=STANCE_FOR, aspect="gmo"),
        "n3": make_label("n3", stance=STANCE_AGAINST, aspect="monsanto"),
    }
    return posts, labels


def test_gexf_structure_and_validation():
    posts, labels = three_node_thread()
    graph = build_graph(posts)
    doc = export_thread(graph, labels, postrank(graph), "gexf")
    assert validate_gexf(doc) == []
    assert doc.count("<node ") == 3
    assert doc.count("<edge ") == 2
    assert 'value="monsanto"' in doc and 'value="for"' in doc


def test_exports_are_deterministic():
    posts, labels = three_node_thread()
    graph = build_graph(posts)
    ranks = postrank(graph)
    for fmt in ("gexf", "dot", "json"):
        assert export_thread(graph, labels, ranks, fmt) == export_thread(graph, labels, ranks, fmt)


def test_unknown_format_rejected():
    posts, labels = three_node_thread()
    graph = build_graph(posts)
    with pytest.raises(ValueError):
        export_thread(graph, labels, None, "svg")


def test_dot_export_shape():
    posts, labels = three_node_thread()
    graph = build_graph(posts)
    doc = export_thread(graph, labels, postrank(graph), "dot")
    assert doc.startswith("digraph thread {")
    assert '"n2" -> "n1";' in doc and '"n3" -> "n1";' in doc
    assert 'stance="against"' in doc


def test_json_export_shape():
    posts, labels = three_node_thread()
    graph = build_graph(posts)
    doc = json.loads(export_thread(graph, labels, postrank(graph), "json"))
    assert doc["root_id"] == "n1"
    assert [n["id"] for n in doc["nodes"]] == ["n1", "n2", "n3"]
    assert doc["nodes"][1]["is_argumentative"] is True
    assert {(e["source"], e["target"]) for e in doc["edges"]} == {("n2", "n1"), ("n3", "n1")}


def test_figure_thread_gexf_counts():
    posts, labels = build_figure_thread()
    graph = build_graph(posts)
    doc = export_thread(graph, labels, postrank(graph), "gexf")
    assert validate_gexf(doc) == []
    assert doc.count("<node ") == 18
    assert doc.count("<edge ") == 17
    import xml.etree.ElementTree as ET

    ns = "{http://www.gexf.net/1.2draft}"
    root = ET.fromstring(doc)
    aspects = {
        v.get("value")
        for v in root.iter(f"{ns}attvalue")
        if v.get("for") == "aspect" and v.get("value")
    }
    assert len(aspects) == 4


def test_removed_root_gets_zero_postrank_attr():
    posts, labels = three_node_thread()
    graph = build_graph(posts)
    doc = json.loads(export_thread(graph, labels, postrank(graph), "json"))
    by_id = {n["id"]: n for n in doc["nodes"]}
    assert by_id["n1"]["postrank"] == 0.0
    assert by_id["n2"]["postrank"] == pytest.approx(0.5)


# -- distribution tables -------------------------------------------------------


def posts_with_lengths(lengths, stance=STANCE_FOR):
    posts, labels = [], {}
    for i, n in enumerate(lengths):
        pid = f"p{i}"
        posts.append(make_post(pid, title="t" if i == 0 else None,
                               parent_id=None if i == 0 else "p0", created_at=i,
                               body=" ".join(["w"] * n)))
        labels[pid] = make_label(pid, stance=stance, aspect="x" if stance != "none" else None)
    return posts, labels


def test_length_ccdf_hand_count():
    posts, labels = posts_with_lengths([10, 60, 60])
    (table,) = [t for t in length_ccdf(posts, labels) if t.group == STANCE_FOR]
    rows = dict(table.rows)
    assert rows[50] == pytest.approx(2 / 3)
    assert rows[0] == 1.0 and rows[60] == 0.0
    values = [v for _, v in table.rows]
    assert all(a >= b for a, b in zip(values, values[1:]))
    assert all(0.0 <= v <= 1.0 for v in values)


def test_length_ccdf_empty_body_counts_zero_in_none_group():
    posts = [make_post("p0", title="t", body="")]
    labels = {"p0": make_label("p0")}
    (none_table,) = [t for t in length_ccdf(posts, labels) if t.group == "none"]
    assert none_table.rows == [(0, 0.0)]  # length 0; P(len > 0) = 0


def test_upvote_adjustment():
    posts = [make_post("p0", title="t", score=1)]
    labels = {"p0": make_label("p0")}
    (table,) = [t for t in upvote_distribution(posts, labels) if t.group == "none"]
    assert table.rows == [(0, 1.0)]


def test_upvote_distribution_hand_count_and_negative():
    posts, labels = posts_with_lengths([1, 1, 1])
    posts[0].score, posts[1].score, posts[2].score = 2, 2, 5
    (table,) = [t for t in upvote_distribution(posts, labels) if t.group == STANCE_FOR]
    assert dict(table.rows) == {1: pytest.approx(2 / 3), 4: pytest.approx(1 / 3)}

    posts[0].score = -3
    (table,) = [t for t in upvote_distribution(posts, labels) if t.group == STANCE_FOR]
    assert dict(table.rows)[-4] == pytest.approx(1 / 3)  # downvotes are data


def test_stance_histogram_hand_count():
    labels = (
        [make_label(f"f{i}", stance=STANCE_FOR, aspect="a") for i in range(4)]
        + [make_label(f"a{i}", stance=STANCE_AGAINST, aspect="b") for i in range(2)]
        + [make_label(f"n{i}") for i in range(4)]
    )
    hist = stance_histogram(labels)
    overall = {cat: (n, pct) for cat, n, pct in hist.overall}
    assert overall["all"] == (10, 100.0)
    assert overall["for"] == (4, 40.0)
    assert overall["against"] == (2, 20.0)
    assert overall["no_argument"] == (4, 40.0)
    assert overall["with_arguments"] == (6, 60.0)
    # mutually exclusive categories account for the whole population
    assert overall["no_argument"][1] + overall["for"][1] + overall["against"][1] == pytest.approx(100.0, abs=0.1)
    assert hist.per_aspect["a"] == {"none": 0, "for": 4, "against": 0}


def test_stance_histogram_empty():
    hist = stance_histogram([])
    assert hist.overall == [] and hist.per_aspect == {}


def test_histogram_row_order_mirrors_reference_table():
    labels = [make_label("x", stance=STANCE_FOR, aspect="a")]
    cats = [cat for cat, _, _ in stance_histogram(labels).overall]
    assert cats == ["all", "no_argument", "with_arguments", "for", "against"]


# -- scatter & least squares -----------------------------------------------------


def profile(tid, n_posts, n_args, n_clusters):
    return dis(n_posts, n_args, n_clusters, thread_id=tid)


def test_least_squares_perfect_fit():
    fit = least_squares([(1, 1), (2, 2), (3, 3)])
    assert fit.slope == pytest.approx(1.0) and fit.intercept == pytest.approx(0.0)
    assert fit.r == pytest.approx(1.0)


def test_least_squares_flat():
    fit = least_squares([(1, 2), (2, 2), (3, 2)])
    assert fit.slope == 0.0 and fit.r == 0.0


def test_least_squares_zero_x_variance_undefined():
    assert least_squares([(2, 1), (2, 5), (2, 9)]) is None


def test_least_squares_five_point_fixture_matches_normal_equations():
    points = [(1.0, 2.1), (2.0, 2.9), (3.0, 4.2), (4.0, 3.8), (5.0, 5.5)]
    fit = least_squares(points)
    slope, intercept, r = bf_ols(points)
    assert fit.slope == pytest.approx(slope, abs=1e-9)
    assert fit.intercept == pytest.approx(intercept, abs=1e-9)
    assert fit.r == pytest.approx(r, abs=1e-9)


def test_args_vs_size_needs_two_profiles():
    with pytest.raises(ValueError):
        args_vs_size([profile("t1", 5, 2, 1)])


def test_args_vs_size_scatter_and_fits():
    profiles = [profile("t1", 2, 1, 1), profile("t2", 4, 2, 2), profile("t3", 6, 3, 3)]
    scatter = args_vs_size(profiles)
    assert [(r[0], r[1]) for r in scatter.rows] == [(2, 1), (4, 2), (6, 3)]
    assert scatter.fit_arguments.slope == pytest.approx(0.5)
    assert scatter.fit_arguments.r == pytest.approx(1.0)
    assert scatter.fit_dis is not None


# -- CSV rendering -----------------------------------------------------------------


def test_csv_text_dialect():
    text = csv_text(["a", "b"], [(1, "x,y"), (2.5, 'say "hi"')])
    lines = text.split("\n")
    assert lines[0] == "a,b"
    assert lines[1] == '1,"x,y"'
    assert lines[2] == '2.5,"say ""hi"""'
    assert text.endswith("\n") and "\r" not in text


def test_distribution_csv_shape():
    posts, labels = posts_with_lengths([2, 4])
    text = distribution_csv(length_ccdf(posts, labels), "x", "ccdf")
    lines = text.strip().split("\n")
    assert lines[0] == "group,x,ccdf"
    assert all(line.split(",")[0] in ("none", "for", "against") for line in lines[1:])
