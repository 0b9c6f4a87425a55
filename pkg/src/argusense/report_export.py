"""Analysis artifacts: annotated graph exports and distribution tables.

Graph exports carry the aspect, stance, PostRank score, and an
is_argumentative flag per node, as categorical values (the rendering
tool maps them to colors).  All outputs are deterministic: fixed inputs
produce byte-identical files.  CSV dialect everywhere: comma-separated,
UTF-8, LF line endings, mandatory header row.
"""

from __future__ import annotations

import json
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Mapping, Sequence

from .backends.types import STANCE_AGAINST, STANCE_FOR, STANCE_NONE, STANCES, ArgumentLabel
from .corpus import Post
from .deliberation import DeliberationProfile
from .text import word_count
from .threadgraph import PostRankResult, ThreadGraph

GEXF_NS = "http://www.gexf.net/1.2draft"
EXPORT_FORMATS = ("gexf", "dot", "json")

_NODE_ATTRS = (
    ("aspect", "string"),
    ("stance", "string"),
    ("postrank", "double"),
    ("is_argumentative", "boolean"),
)


def _node_attributes(
    graph: ThreadGraph,
    labels: Mapping[str, ArgumentLabel],
    ranks: PostRankResult | None,
) -> dict[str, dict[str, str]]:
    scores = ranks.scores if ranks else {}
    out = {}
    for nid in sorted(graph.nodes):
        label = labels.get(nid)
        stance = label.stance if label else STANCE_NONE
        aspect = (label.aspect or "") if label else ""
        out[nid] = {
            "aspect": aspect,
            "stance": stance,
            "postrank": repr(scores.get(nid, 0.0)),
            "is_argumentative": "true" if stance != STANCE_NONE else "false",
        }
    return out


def export_thread(
    graph: ThreadGraph,
    labels: Mapping[str, ArgumentLabel],
    ranks: PostRankResult | None,
    fmt: str,
) -> str:
    """Serialize one annotated thread graph as GEXF 1.2, DOT, or JSON."""
    if fmt not in EXPORT_FORMATS:
        raise ValueError(f"unknown export format {fmt!r}; choose from {EXPORT_FORMATS}")
    attrs = _node_attributes(graph, labels, ranks)
    if fmt == "gexf":
        return _to_gexf(graph, attrs)
    if fmt == "dot":
        return _to_dot(graph, attrs)
    return _to_json(graph, attrs)


def _to_gexf(graph: ThreadGraph, attrs: dict[str, dict[str, str]]) -> str:
    root = ET.Element("gexf", {"xmlns": GEXF_NS, "version": "1.2"})
    graph_el = ET.SubElement(root, "graph", {"mode": "static", "defaultedgetype": "directed"})
    attributes = ET.SubElement(graph_el, "attributes", {"class": "node"})
    for name, typ in _NODE_ATTRS:
        ET.SubElement(attributes, "attribute", {"id": name, "title": name, "type": typ})
    nodes_el = ET.SubElement(graph_el, "nodes")
    for nid in sorted(graph.nodes):
        node_el = ET.SubElement(nodes_el, "node", {"id": nid, "label": nid})
        values = ET.SubElement(node_el, "attvalues")
        for name, _typ in _NODE_ATTRS:
            ET.SubElement(values, "attvalue", {"for": name, "value": attrs[nid][name]})
    edges_el = ET.SubElement(graph_el, "edges")
    for k, (child, parent) in enumerate(sorted(graph.edges)):
        ET.SubElement(edges_el, "edge", {"id": f"e{k}", "source": child, "target": parent})
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def _dot_quote(value: str) -> str:
    return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _to_dot(graph: ThreadGraph, attrs: dict[str, dict[str, str]]) -> str:
    lines = ["digraph thread {"]
    for nid in sorted(graph.nodes):
        a = attrs[nid]
        pairs = ", ".join(f"{name}={_dot_quote(a[name])}" for name, _ in _NODE_ATTRS)
        lines.append(f"  {_dot_quote(nid)} [{pairs}];")
    for child, parent in sorted(graph.edges):
        lines.append(f"  {_dot_quote(child)} -> {_dot_quote(parent)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _to_json(graph: ThreadGraph, attrs: dict[str, dict[str, str]]) -> str:
    doc = {
        "thread_id": graph.thread_id,
        "root_id": graph.root_id,
        "nodes": [
            {
                "id": nid,
                "aspect": attrs[nid]["aspect"],
                "stance": attrs[nid]["stance"],
                "postrank": float(attrs[nid]["postrank"]),
                "is_argumentative": attrs[nid]["is_argumentative"] == "true",
            }
            for nid in sorted(graph.nodes)
        ],
        "edges": [{"source": c, "target": p} for c, p in sorted(graph.edges)],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# -- distribution tables -----------------------------------------------------


@dataclass
class DistributionTable:
    kind: str
    group: str  # stance or aspect the rows belong to
    rows: list[tuple]


def _stance_of(post: Post, labels: Mapping[str, ArgumentLabel]) -> str:
    label = labels.get(post.post_id)
    return label.stance if label else STANCE_NONE


def length_ccdf(posts: Sequence[Post], labels: Mapping[str, ArgumentLabel]) -> list[DistributionTable]:
    """P(word count > x) per stance group at integer x; word count is the
    whitespace token count of the body."""
    groups: dict[str, list[int]] = {s: [] for s in STANCES}
    for post in posts:
        groups[_stance_of(post, labels)].append(word_count(post.body))
    tables = []
    for stance in STANCES:
        lengths = groups[stance]
        rows: list[tuple] = []
        if lengths:
            total = len(lengths)
            for x in range(0, max(lengths) + 1):
                rows.append((x, sum(1 for v in lengths if v > x) / total))
        tables.append(DistributionTable(kind="length_ccdf", group=stance, rows=rows))
    return tables


def upvote_distribution(posts: Sequence[Post], labels: Mapping[str, ArgumentLabel]) -> list[DistributionTable]:
    """Empirical distribution of adjusted scores (score minus the automatic
    self-upvote) per stance; negative adjusted scores are kept."""
    groups: dict[str, list[int]] = {s: [] for s in STANCES}
    for post in posts:
        groups[_stance_of(post, labels)].append(post.score - 1)
    tables = []
    for stance in STANCES:
        scores = groups[stance]
        rows: list[tuple] = []
        if scores:
            total = len(scores)
            for value in sorted(set(scores)):
                rows.append((value, scores.count(value) / total))
        tables.append(DistributionTable(kind="upvote_dist", group=stance, rows=rows))
    return tables


@dataclass
class StanceHistogram:
    """Post counts by stance, overall and per aspect.

    The overall table mirrors the corpus reference shape: all posts, no
    argument, with arguments, then the for/against split.
    """

    overall: list[tuple[str, int, float]]
    per_aspect: dict[str, dict[str, int]]

    def to_rows(self) -> list[tuple]:
        rows: list[tuple] = [("overall", "", cat, n, pct) for cat, n, pct in self.overall]
        for aspect in sorted(self.per_aspect):
            counts = self.per_aspect[aspect]
            total = sum(counts.values())
            for stance in STANCES:
                pct = 100.0 * counts[stance] / total if total else 0.0
                rows.append(("aspect", aspect, stance, counts[stance], pct))
        return rows


def stance_histogram(labels: Sequence[ArgumentLabel]) -> StanceHistogram:
    total = len(labels)
    if total == 0:
        return StanceHistogram(overall=[], per_aspect={})
    n_for = sum(1 for l in labels if l.stance == STANCE_FOR)
    n_against = sum(1 for l in labels if l.stance == STANCE_AGAINST)
    n_none = total - n_for - n_against
    overall = [
        ("all", total, 100.0),
        ("no_argument", n_none, 100.0 * n_none / total),
        ("with_arguments", n_for + n_against, 100.0 * (n_for + n_against) / total),
        ("for", n_for, 100.0 * n_for / total),
        ("against", n_against, 100.0 * n_against / total),
    ]
    per_aspect: dict[str, dict[str, int]] = {}
    for label in labels:
        if label.aspect:
            counts = per_aspect.setdefault(label.aspect, {s: 0 for s in STANCES})
            counts[label.stance] += 1
    return StanceHistogram(overall=overall, per_aspect=per_aspect)


@dataclass
class OLSFit:
    slope: float
    intercept: float
    r: float


def least_squares(points: Sequence[tuple[float, float]]) -> OLSFit | None:
    """Ordinary least squares with Pearson r; None when x has no variance
    (the fit is undefined there).  A flat y gives slope 0 and r 0."""
    n = len(points)
    if n < 2:
        return None
    xm = sum(x for x, _ in points) / n
    ym = sum(y for _, y in points) / n
    sxx = sum((x - xm) ** 2 for x, _ in points)
    syy = sum((y - ym) ** 2 for _, y in points)
    sxy = sum((x - xm) * (y - ym) for x, y in points)
    if sxx == 0:
        return None
    slope = sxy / sxx
    intercept = ym - slope * xm
    r = sxy / math.sqrt(sxx * syy) if syy > 0 else 0.0
    return OLSFit(slope=slope, intercept=intercept, r=r)


@dataclass
class ArgsVsSize:
    rows: list[tuple[int, int, float]]  # (n_posts, n_arguments, dis) per thread
    fit_arguments: OLSFit | None
    fit_dis: OLSFit | None


def args_vs_size(profiles: Sequence[DeliberationProfile]) -> ArgsVsSize:
    """Scatter of argument count and DIS against thread size, with a
    least-squares fit for each."""
    if len(profiles) < 2:
        raise ValueError("args_vs_size needs at least 2 profiles")
    ordered = sorted(profiles, key=lambda p: p.thread_id)
    rows = [(p.n_posts, p.n_arguments, p.dis) for p in ordered]
    fit_args = least_squares([(p.n_posts, p.n_arguments) for p in ordered])
    fit_dis = least_squares([(p.n_posts, p.dis) for p in ordered])
    return ArgsVsSize(rows=rows, fit_arguments=fit_args, fit_dis=fit_dis)


# -- CSV rendering -------------------------------------------------------------


def csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    """Render rows as comma-separated UTF-8 text with LF endings.  Values
    containing commas/quotes/newlines are quoted per RFC 4180."""

    def cell(value) -> str:
        s = repr(value) if isinstance(value, float) else str(value)
        if any(ch in s for ch in ',"\n'):
            s = '"' + s.replace('"', '""') + '"'
        return s

    lines = [",".join(header)]
    lines.extend(",".join(cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def distribution_csv(tables: Sequence[DistributionTable], x_name: str, value_name: str) -> str:
    rows = []
    for table in tables:
        for x, value in table.rows:
            rows.append((table.group, x, value))
    return csv_text(["group", x_name, value_name], rows)
