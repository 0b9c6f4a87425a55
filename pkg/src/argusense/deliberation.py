"""Deliberation intensity scoring.

Per thread: cluster diversity d_cluster = #clusters / #arguments and
argument diversity d_arg = #arguments / #posts combine into

    DIS = sigma1 * d_cluster + sigma2 * d_arg

where the weights come from logits of the raw counts,
a1 = 1/(1+e^-#arguments), a2 = 1/(1+e^-#posts), normalized so
sigma1 + sigma2 = 1.  DIS lives in [0, 1]; a thread with no arguments
scores 0 (d_cluster is defined as 0 there, since the cluster ratio is
only defined for a positive argument count).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from typing import Iterable, Mapping, Sequence

from .backends.types import ArgumentLabel
from .clustering import ClusterSet, effective_cluster_count

CCDF_RESOLUTION = 0.01


@dataclass
class DeliberationProfile:
    thread_id: str
    n_posts: int
    n_arguments: int
    n_clusters: int
    d_cluster: float
    d_arg: float
    a1: float
    a2: float
    sigma1: float
    sigma2: float
    dis: float

    def to_dict(self) -> dict:
        return asdict(self)


def dis(n_posts: int, n_arguments: int, n_clusters: int, thread_id: str = "") -> DeliberationProfile:
    """Deliberation profile for one thread's counts.

    Requires n_posts >= 1 (the post ratio is only defined for a positive
    total), 0 <= n_arguments <= n_posts, and
    0 <= n_clusters <= max(n_arguments, 1).
    """
    if n_posts < 1:
        raise ValueError("n_posts must be at least 1")
    if not 0 <= n_arguments <= n_posts:
        raise ValueError("n_arguments must lie in [0, n_posts]")
    if not 0 <= n_clusters <= max(n_arguments, 1):
        raise ValueError("n_clusters must lie in [0, max(n_arguments, 1)]")

    d_cluster = n_clusters / n_arguments if n_arguments > 0 else 0.0
    d_arg = n_arguments / n_posts
    a1 = 1.0 / (1.0 + math.exp(-n_arguments))
    a2 = 1.0 / (1.0 + math.exp(-n_posts))
    sigma1 = a1 / (a1 + a2)
    sigma2 = a2 / (a1 + a2)
    return DeliberationProfile(
        thread_id=thread_id,
        n_posts=n_posts,
        n_arguments=n_arguments,
        n_clusters=n_clusters,
        d_cluster=d_cluster,
        d_arg=d_arg,
        a1=a1,
        a2=a2,
        sigma1=sigma1,
        sigma2=sigma2,
        dis=sigma1 * d_cluster + sigma2 * d_arg,
    )


@dataclass
class ProfileResult:
    profiles: list[DeliberationProfile]
    skipped: int  # threads missing labels or cluster data


def profile_subset(
    thread_ids: Iterable[str],
    thread_sizes: Mapping[str, int],
    labels_by_thread: Mapping[str, Sequence[ArgumentLabel]],
    cluster_sets: Mapping[str, ClusterSet],
) -> ProfileResult:
    """One deliberation profile per thread of the subset.

    Threads without labels (or without cluster data despite having
    arguments) are skipped and counted rather than failing the run.
    """
    profiles = []
    skipped = 0
    for tid in sorted(thread_ids):
        if tid not in labels_by_thread or tid not in thread_sizes:
            skipped += 1
            continue
        labels = labels_by_thread[tid]
        n_arguments = sum(1 for l in labels if l.is_argumentative)
        cluster_set = cluster_sets.get(tid)
        if cluster_set is None:
            if n_arguments > 0:
                skipped += 1
                continue
            n_clusters = 0
        else:
            n_clusters = effective_cluster_count(cluster_set, n_arguments)
        profiles.append(dis(thread_sizes[tid], n_arguments, n_clusters, thread_id=tid))
    return ProfileResult(profiles=profiles, skipped=skipped)


def dis_ccdf(
    profiles: Sequence[DeliberationProfile], resolution: float = CCDF_RESOLUTION
) -> list[tuple[float, float]]:
    """Complementary CDF of the DIS distribution, P(DIS > x), sampled on a
    grid of the given resolution over [0, 1]."""
    values = [p.dis for p in profiles]
    total = len(values)
    steps = round(1.0 / resolution)
    rows = []
    for i in range(steps + 1):
        x = round(i * resolution, 10)
        ccdf = sum(1 for v in values if v > x) / total if total else 0.0
        rows.append((x, ccdf))
    return rows
