"""Topic definitions and topic-relevant thread selection.

A topic is a set of keywords plus aspects (concepts that anchor
arguments, e.g. Monsanto or CRISPR in a GMO debate).  A thread is
relevant when at least one of its posts whole-word-matches any topic or
aspect keyword in its title or body.  No stemming: inflected forms must
be listed explicitly, which is why the default GMO topic carries both
"gmo" and "gmos".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .corpus import Post
from .text import contains_any_keyword, post_text

PROVENANCES = ("expert", "discovered")


@dataclass
class Aspect:
    name: str
    keywords: list[str]
    provenance: str = "expert"

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"provenance must be one of {PROVENANCES}")
        self.keywords = [k.casefold() for k in self.keywords if k.strip()]
        if not self.keywords:
            raise ValueError(f"aspect {self.name!r} has no keywords")

    def to_dict(self) -> dict:
        return {"name": self.name, "keywords": self.keywords, "provenance": self.provenance}

    @classmethod
    def from_dict(cls, d: dict) -> "Aspect":
        return cls(name=d["name"], keywords=list(d["keywords"]), provenance=d.get("provenance", "expert"))


@dataclass
class TopicConfig:
    topic_name: str
    topic_keywords: list[str]
    aspects: list[Aspect] = field(default_factory=list)

    def __post_init__(self):
        self.topic_keywords = [k.casefold() for k in self.topic_keywords if k.strip()]
        if not self.topic_keywords:
            raise ValueError("a topic needs at least one keyword")
        names = [a.name for a in self.aspects]
        if len(names) != len(set(names)):
            raise ValueError("aspect names must be unique within a topic")

    def all_keywords(self) -> list[str]:
        kws = list(self.topic_keywords)
        for a in self.aspects:
            kws.extend(a.keywords)
        return kws

    def to_dict(self) -> dict:
        return {
            "topic_name": self.topic_name,
            "topic_keywords": self.topic_keywords,
            "aspects": [a.to_dict() for a in self.aspects],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TopicConfig":
        return cls(
            topic_name=d["topic_name"],
            topic_keywords=list(d["topic_keywords"]),
            aspects=[Aspect.from_dict(a) for a in d.get("aspects", [])],
        )


@dataclass
class ThreadSubset:
    label: str
    thread_ids: set[str]

    def to_dict(self) -> dict:
        return {"label": self.label, "thread_ids": sorted(self.thread_ids)}

    @classmethod
    def from_dict(cls, d: dict) -> "ThreadSubset":
        return cls(label=d["label"], thread_ids=set(d["thread_ids"]))

    def __len__(self) -> int:
        return len(self.thread_ids)


def default_gmo_topic() -> TopicConfig:
    """The bundled GMO debate topic: singular and plural topic keywords,
    expert aspects plus the aspects the discovery stage tends to surface
    on agriculture forums."""
    return TopicConfig(
        topic_name="gmo",
        topic_keywords=[
            "gmo",
            "gmos",
            "genetically modified organism",
            "genetically modified organisms",
        ],
        aspects=[
            Aspect("gene editing", ["gene editing", "gene edited"], "expert"),
            Aspect("CRISPR", ["crispr"], "expert"),
            Aspect("biotechnology", ["biotechnology", "biotech"], "expert"),
            Aspect("genomics based", ["genomics based", "genomics"], "expert"),
            Aspect("Monsanto", ["monsanto"], "discovered"),
            Aspect("China", ["china"], "discovered"),
            Aspect("John Deere", ["john deere"], "discovered"),
            Aspect("Climate Change", ["climate change"], "discovered"),
            Aspect("Soil Science", ["soil science"], "discovered"),
        ],
    )


BUILTIN_TOPICS = {"gmo": default_gmo_topic}


def match_post(post: Post, topic: TopicConfig) -> bool:
    """True when the post's title+body contains any topic or aspect keyword
    as a case-insensitive whole word (multiword keywords as contiguous
    word sequences)."""
    return contains_any_keyword(post_text(post.title, post.body), topic.all_keywords())


def select_threads(posts: Iterable[Post], topic: TopicConfig, label: str | None = None) -> ThreadSubset:
    """Threads with at least one likely-relevant post."""
    hits: set[str] = set()
    for post in posts:
        if post.thread_id not in hits and match_post(post, topic):
            hits.add(post.thread_id)
    return ThreadSubset(label=label or f"T_{topic.topic_name}", thread_ids=hits)


def filter_by_min_posts(
    subset: ThreadSubset,
    min_posts: int,
    thread_sizes: Mapping[str, int],
    label: str | None = None,
) -> ThreadSubset:
    """Threads of the subset with strictly more than ``min_posts`` posts."""
    kept = {tid for tid in subset.thread_ids if thread_sizes.get(tid, 0) > min_posts}
    return ThreadSubset(label=label or f"{subset.label}_gt{min_posts}", thread_ids=kept)
