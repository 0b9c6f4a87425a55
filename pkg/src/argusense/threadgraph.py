"""Reply-tree graphs per thread and the metrics computed on them.

A thread is a directed tree with one edge per reply, pointing child to
parent; only the thread-starting post has no outgoing edge.  Depth
counts edges with the root at depth zero; fan out is the number of
leaves; a sub-thread is a post answered by more than one reply.

PostRank is PageRank with one modification: nodes with zero out-degree
in the original graph (the root) are removed first, once, so the
ranking reflects which posts drive discussion rather than the root's
built-in advantage.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .backends.types import STANCE_AGAINST, STANCE_FOR, ArgumentLabel
from .corpus import Post

ARGUMENT_STANCES = (STANCE_FOR, STANCE_AGAINST)


class GraphError(Exception):
    pass


@dataclass
class ThreadGraph:
    thread_id: str
    nodes: list[str]
    edges: list[tuple[str, str]]  # (child, parent)
    root_id: str

    def children(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {nid: [] for nid in self.nodes}
        for child, parent in self.edges:
            out[parent].append(child)
        for kids in out.values():
            kids.sort()
        return out


@dataclass
class ThreadMetrics:
    n_posts: int
    n_argumentative: int
    depth: int
    fan_out: int
    sub_threads: int
    avg_degree: float


@dataclass
class PostRankResult:
    scores: dict[str, float]
    removed_ids: set[str]
    damping: float
    iterations: int
    converged: bool


@dataclass
class StanceTransitionTable:
    """Counts and conditional probabilities of a reply's stance given its
    parent's stance; rows with no qualifying pairs are undefined (None),
    never zero."""

    counts: dict[str, dict[str, int]]
    same_aspect_only: bool

    def row(self, parent_stance: str) -> dict[str, float] | None:
        row = self.counts[parent_stance]
        total = sum(row.values())
        if total == 0:
            return None
        return {child: n / total for child, n in row.items()}

    @property
    def probabilities(self) -> dict[str, dict[str, float] | None]:
        return {a: self.row(a) for a in ARGUMENT_STANCES}

    def to_dict(self) -> dict:
        return {
            "same_aspect_only": self.same_aspect_only,
            "counts": self.counts,
            "probabilities": self.probabilities,
        }


def empty_transition_table(same_aspect_only: bool = True) -> StanceTransitionTable:
    counts = {a: {b: 0 for b in ARGUMENT_STANCES} for a in ARGUMENT_STANCES}
    return StanceTransitionTable(counts=counts, same_aspect_only=same_aspect_only)


def build_graph(posts: Sequence[Post]) -> ThreadGraph:
    """Node per post, edge child to parent per reply link.  The posts must
    form one well-rooted tree (ingestion guarantees this)."""
    if not posts:
        raise GraphError("cannot build a graph from zero posts")
    thread_id = posts[0].thread_id
    roots = [p for p in posts if p.is_root]
    if len(roots) != 1:
        raise GraphError(f"thread {thread_id!r} has {len(roots)} roots, expected exactly 1")
    ids = {p.post_id for p in posts}
    edges = []
    for p in posts:
        if p.is_root:
            continue
        if p.parent_id is None or p.parent_id not in ids:
            raise GraphError(f"post {p.post_id!r} has unresolvable parent {p.parent_id!r}")
        edges.append((p.post_id, p.parent_id))
    return ThreadGraph(
        thread_id=thread_id,
        nodes=sorted(ids),
        edges=sorted(edges),
        root_id=roots[0].post_id,
    )


def compute_metrics(graph: ThreadGraph, labels: Mapping[str, ArgumentLabel]) -> ThreadMetrics:
    children = graph.children()
    depth = 0
    stack = [(graph.root_id, 0)]
    leaves = 0
    sub_threads = 0
    while stack:
        node, d = stack.pop()
        kids = children[node]
        if not kids:
            leaves += 1
            depth = max(depth, d)
        else:
            if len(kids) >= 2:
                sub_threads += 1
            depth = max(depth, d)
            stack.extend((kid, d + 1) for kid in kids)
    n = len(graph.nodes)
    n_arg = sum(
        1
        for nid in graph.nodes
        if nid in labels and labels[nid].stance in ARGUMENT_STANCES
    )
    return ThreadMetrics(
        n_posts=n,
        n_argumentative=n_arg,
        depth=depth,
        fan_out=leaves,
        sub_threads=sub_threads,
        avg_degree=len(graph.edges) / n,
    )


def postrank(
    graph: ThreadGraph,
    damping: float = 0.85,
    tol: float = 1e-9,
    max_iter: int = 100,
) -> PostRankResult:
    """Power-iteration PageRank after removing zero-out-degree nodes.

    Removal happens once, against the original graph, so exactly the
    root goes; its former children become dangling and their mass is
    redistributed uniformly.  Retained scores sum to one.
    """
    out_degree = {nid: 0 for nid in graph.nodes}
    for child, _parent in graph.edges:
        out_degree[child] += 1
    removed = {nid for nid, deg in out_degree.items() if deg == 0}
    retained = [nid for nid in graph.nodes if nid not in removed]
    n = len(retained)
    if n == 0:
        return PostRankResult({}, removed, damping, 0, True)

    idx = {nid: i for i, nid in enumerate(retained)}
    targets: list[list[int]] = [[] for _ in range(n)]  # outgoing targets per node
    for child, parent in graph.edges:
        if child in idx and parent in idx:
            targets[idx[child]].append(idx[parent])

    x = [1.0 / n] * n
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        dangling = sum(x[i] for i in range(n) if not targets[i])
        base = (1.0 - damping) / n + damping * dangling / n
        nxt = [base] * n
        for i in range(n):
            if targets[i]:
                share = damping * x[i] / len(targets[i])
                for j in targets[i]:
                    nxt[j] += share
        delta = sum(abs(a - b) for a, b in zip(nxt, x))
        x = nxt
        if delta < tol:
            converged = True
            break

    total = sum(x)
    scores = {nid: x[idx[nid]] / total for nid in retained}
    return PostRankResult(scores, removed, damping, iterations, converged)


def stance_dependence(
    graphs: Iterable[ThreadGraph],
    labels: Mapping[str, ArgumentLabel],
    same_aspect_only: bool = True,
) -> StanceTransitionTable:
    """Counts parent-stance to child-stance transitions over all reply
    edges where both ends are arguments (and share an aspect, when
    ``same_aspect_only``)."""
    table = empty_transition_table(same_aspect_only)
    for graph in graphs:
        for child, parent in graph.edges:
            lc, lp = labels.get(child), labels.get(parent)
            if lc is None or lp is None:
                continue
            if lc.stance not in ARGUMENT_STANCES or lp.stance not in ARGUMENT_STANCES:
                continue
            if same_aspect_only and lc.aspect != lp.aspect:
                continue
            table.counts[lp.stance][lc.stance] += 1
    return table
