"""Shared fixtures: post builders, the 18-post reference thread, and the
bundled synthetic corpus."""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from argusense.backends.types import STANCE_AGAINST, STANCE_FOR, STANCE_NONE, ArgumentLabel
from argusense.corpus import Post

DATA_DIR = Path(__file__).parent / "data"


def make_post(
    post_id: str,
    thread_id: str = "t1",
    parent_id: str | None = None,
    created_at: int = 0,
    title: str | None = None,
    body: str = "",
    score: int = 1,
    orphan: bool = False,
) -> Post:
    return Post(
        post_id=post_id,
        thread_id=thread_id,
        parent_id=parent_id,
        author_hash="deadbeef",
        created_at=created_at,
        title=title,
        body=body,
        score=score,
        is_root=parent_id is None,
        orphan=orphan,
    )


def make_label(post_id: str, stance: str = STANCE_NONE, aspect: str | None = None) -> ArgumentLabel:
    return ArgumentLabel(post_id=post_id, aspect=aspect, stance=stance, confidence=1.0, backend_id="test")


@pytest.fixture
def synthetic_corpus_path() -> Path:
    return DATA_DIR / "synthetic_50.jsonl"


# The reference thread: 18 posts, depth 7, fan out 7, 4 sub-threads,
# 13 aspect-based posts over 4 aspects, 7 of them argumentative.
FIGURE_TREE_EDGES = {
    # main chain, depth 7
    "a1": "r", "a2": "a1", "a3": "a2", "a4": "a3", "a5": "a4", "a6": "a5", "a7": "a6",
    # branches off the root and the upper chain
    "b1": "r", "b2": "r",
    "c1": "a1", "c2": "a1",
    "d1": "a2",
    "e1": "a3", "e2": "e1",
    # children hung off former leaves (leaf count stays 7)
    "f1": "b1", "f2": "b2", "f3": "c1",
}

FIGURE_ASPECTS = {
    # argumentative posts: 7 posts across 4 aspects
    "a1": ("monsanto", STANCE_FOR),
    "a3": ("crispr", STANCE_AGAINST),
    "a5": ("soil science", STANCE_FOR),
    "b1": ("climate change", STANCE_AGAINST),
    "c1": ("monsanto", STANCE_FOR),
    "d1": ("soil science", STANCE_AGAINST),
    "e2": ("crispr", STANCE_FOR),
    # aspect-based but non-argumentative posts (6 more, 13 total with aspects)
    "a2": ("monsanto", STANCE_NONE),
    "a4": ("soil science", STANCE_NONE),
    "a6": ("crispr", STANCE_NONE),
    "b2": ("climate change", STANCE_NONE),
    "c2": ("monsanto", STANCE_NONE),
    "f1": ("soil science", STANCE_NONE),
}


def build_figure_thread() -> tuple[list[Post], dict[str, ArgumentLabel]]:
    posts = [make_post("r", thread_id="fig", created_at=0, title="Reference thread", body="root")]
    for i, (child, parent) in enumerate(sorted(FIGURE_TREE_EDGES.items()), start=1):
        posts.append(
            make_post(child, thread_id="fig", parent_id=parent, created_at=i, body=f"post {child}")
        )
    labels = {}
    for post in posts:
        aspect, stance = FIGURE_ASPECTS.get(post.post_id, (None, STANCE_NONE))
        labels[post.post_id] = ArgumentLabel(
            post_id=post.post_id, aspect=aspect, stance=stance, confidence=1.0, backend_id="test"
        )
    return posts, labels


@pytest.fixture
def figure_thread():
    return build_figure_thread()


def write_dump(path: Path, records: list[dict]) -> Path:
    with path.open("w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec) + "\n")
    return path
