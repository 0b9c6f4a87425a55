"""Threshold clustering of similar arguments and medoid summaries.

Two modes ship:

* ``components`` (default): clusters are the connected components of the
  graph whose edges are argument pairs at or above the similarity
  threshold.  Order-independent closure of the intent.
* ``strict``: the literal single-pass semantics where a similar pair
  spanning two existing clusters triggers no merge.  Pair iteration is
  in sorted (i, j) order so the result is still deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .backends.types import STANCE_AGAINST, STANCE_FOR

MODES = ("components", "strict")
DEFAULT_THRESHOLD = 0.75


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:  # path compression
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1


@dataclass
class Cluster:
    cluster_id: int
    member_post_ids: set[str]
    summary_post_id: str | None = None
    stance_profile: dict[str, int] = field(default_factory=lambda: {"for": 0, "against": 0})

    def to_dict(self) -> dict:
        return {
            "cluster_id": self.cluster_id,
            "members": sorted(self.member_post_ids),
            "medoid": self.summary_post_id,
            "stance_profile": self.stance_profile,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Cluster":
        return cls(
            cluster_id=d["cluster_id"],
            member_post_ids=set(d["members"]),
            summary_post_id=d.get("medoid"),
            stance_profile=dict(d.get("stance_profile", {"for": 0, "against": 0})),
        )


@dataclass
class ClusterSet:
    """Multi-member clusters over one argument population; arguments in no
    cluster are singletons."""

    clusters: list[Cluster]
    mode: str
    threshold: float
    counted_singletons: bool = True
    argument_ids: list[str] = field(default_factory=list)

    @property
    def clustered_ids(self) -> set[str]:
        out: set[str] = set()
        for c in self.clusters:
            out |= c.member_post_ids
        return out

    @property
    def singleton_ids(self) -> list[str]:
        clustered = self.clustered_ids
        return [pid for pid in self.argument_ids if pid not in clustered]

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "threshold": self.threshold,
            "counted_singletons": self.counted_singletons,
            "argument_ids": sorted(self.argument_ids),
            "clusters": [c.to_dict() for c in self.clusters],
            "singletons": sorted(self.singleton_ids),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ClusterSet":
        return cls(
            clusters=[Cluster.from_dict(c) for c in d.get("clusters", [])],
            mode=d["mode"],
            threshold=d["threshold"],
            counted_singletons=d.get("counted_singletons", True),
            argument_ids=list(d.get("argument_ids", [])),
        )


def _medoid(member_idx: list[int], ids: list[str], matrix: list[list[float]]) -> str:
    if len(member_idx) == 1:
        return ids[member_idx[0]]
    best_id = None
    best_mean = -1.0
    for i in member_idx:
        mean = sum(matrix[i][j] for j in member_idx if j != i) / (len(member_idx) - 1)
        if mean > best_mean or (mean == best_mean and ids[i] < best_id):
            best_mean, best_id = mean, ids[i]
    return best_id


def cluster_arguments(
    arguments: Sequence[tuple[str, str]],
    similarity_backend,
    threshold: float = DEFAULT_THRESHOLD,
    mode: str = "components",
    counted_singletons: bool = True,
    stances: Mapping[str, str] | None = None,
) -> ClusterSet:
    """Cluster (post_id, text) arguments whose pairwise similarity reaches
    ``threshold``.  Fewer than two arguments yield zero multi-member
    clusters."""
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must lie in [0, 1]")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")

    ordered = sorted(arguments, key=lambda a: a[0])
    ids = [pid for pid, _ in ordered]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate argument post ids")
    texts = [text for _, text in ordered]
    n = len(ids)

    if n < 2:
        return ClusterSet([], mode, threshold, counted_singletons, list(ids))

    matrix = similarity_backend.pairwise(texts)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if matrix[i][j] >= threshold]

    if mode == "components":
        uf = UnionFind(n)
        for i, j in edges:
            uf.union(i, j)
        groups: dict[int, list[int]] = {}
        for i in range(n):
            groups.setdefault(uf.find(i), []).append(i)
        member_groups = [g for g in groups.values() if len(g) >= 2]
    else:
        # literal single-pass semantics: a pair spanning two existing
        # clusters is ignored rather than merged
        assigned: dict[int, int] = {}
        raw_groups: list[list[int]] = []
        for i, j in edges:
            in_i, in_j = i in assigned, j in assigned
            if not in_i and not in_j:
                assigned[i] = assigned[j] = len(raw_groups)
                raw_groups.append([i, j])
            elif in_i and not in_j:
                assigned[j] = assigned[i]
                raw_groups[assigned[i]].append(j)
            elif in_j and not in_i:
                assigned[i] = assigned[j]
                raw_groups[assigned[j]].append(i)
        member_groups = raw_groups

    member_groups.sort(key=lambda g: min(ids[i] for i in g))
    clusters = []
    for k, group in enumerate(member_groups, start=1):
        members = {ids[i] for i in group}
        profile = {"for": 0, "against": 0}
        if stances:
            profile["for"] = sum(1 for pid in members if stances.get(pid) == STANCE_FOR)
            profile["against"] = sum(1 for pid in members if stances.get(pid) == STANCE_AGAINST)
        clusters.append(
            Cluster(
                cluster_id=k,
                member_post_ids=members,
                summary_post_id=_medoid(sorted(group), ids, matrix),
                stance_profile=profile,
            )
        )
    return ClusterSet(clusters, mode, threshold, counted_singletons, list(ids))


def effective_cluster_count(cluster_set: ClusterSet, n_arguments: int) -> int:
    """Cluster count feeding the diversity ratio.

    With counted_singletons (default) every unclustered argument counts as
    its own cluster, so all-distinct arguments give a count equal to
    n_arguments; without it, only multi-member clusters count (the
    literal single-pass return value N).
    """
    multi = sum(1 for c in cluster_set.clusters if len(c.member_post_ids) >= 2)
    clustered = sum(len(c.member_post_ids) for c in cluster_set.clusters)
    if n_arguments < clustered:
        raise ValueError("n_arguments smaller than the number of clustered members")
    if cluster_set.counted_singletons:
        return multi + (n_arguments - clustered)
    return multi


def summarize_cluster(
    member_ids: Sequence[str], texts_by_id: Mapping[str, str], similarity_backend
) -> str:
    """Medoid of a cluster: the member with maximal mean similarity to the
    others, ties to the lexicographically smallest post id."""
    if not member_ids:
        raise ValueError("cannot summarize an empty cluster")
    ordered = sorted(member_ids)
    if len(ordered) == 1:
        return ordered[0]
    matrix = similarity_backend.pairwise([texts_by_id[pid] for pid in ordered])
    return _medoid(list(range(len(ordered))), ordered, matrix)
