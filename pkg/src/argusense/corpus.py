"""Forum dump ingestion and the workspace post store.

Input is newline-delimited JSON with pushshift-style field names
(id, link_id, parent_id, subreddit, author, created_utc, body, title,
score); a field-mapping table in the workspace config permits renames.
Ingestion normalizes records into an immutable on-disk store that every
downstream stage treats as read-only.  Re-ingesting the same dump is
idempotent: the store bytes do not change.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Iterable, Iterator

DEFAULT_SALT = "argusense"
ORPHAN_POLICIES = ("attach-root", "drop")

# prefix pushshift puts on fullname ids (t1_ = comment, t3_ = submission)
_KIND_PREFIXES = ("t1_", "t2_", "t3_", "t4_", "t5_", "t6_")


class CorpusError(Exception):
    pass


class ThreadNotFound(CorpusError):
    pass


@dataclass
class Post:
    """One normalized forum comment or submission."""

    post_id: str
    thread_id: str
    parent_id: str | None
    author_hash: str
    created_at: int
    title: str | None
    body: str
    score: int
    is_root: bool
    orphan: bool = False

    def to_record(self) -> dict:
        return asdict(self)

    @classmethod
    def from_record(cls, rec: dict) -> "Post":
        return cls(**rec)

    @property
    def text(self) -> str:
        from .text import post_text

        return post_text(self.title, self.body)


@dataclass
class Thread:
    thread_id: str
    post_ids: list[str]
    subreddit: str


@dataclass
class IngestStats:
    """Per-run accounting; posts + malformed + duplicates + dropped_orphans
    equals records."""

    records: int = 0
    posts: int = 0  # posts added to the store by this run
    malformed: int = 0
    duplicates: int = 0
    dropped_orphans: int = 0
    orphans: int = 0  # posts flagged orphan in the store after this run
    threads: int = 0  # threads in the store after this run
    total_posts: int = 0  # posts in the store after this run

    def to_dict(self) -> dict:
        return asdict(self)


class Workspace:
    """Path layout and JSON persistence for one analysis workspace.

    Single-writer during ingestion; immutable and safe for concurrent
    readers afterwards.
    """

    def __init__(self, root: str | Path):
        self.root = Path(root)

    # -- layout ----------------------------------------------------------

    @property
    def config_path(self) -> Path:
        return self.root / "config.json"

    @property
    def posts_path(self) -> Path:
        return self.root / "corpus" / "posts.jsonl"

    @property
    def threads_path(self) -> Path:
        return self.root / "corpus" / "threads.json"

    @property
    def topics_dir(self) -> Path:
        return self.root / "topics"

    @property
    def subsets_dir(self) -> Path:
        return self.root / "subsets"

    @property
    def labels_dir(self) -> Path:
        return self.root / "labels"

    @property
    def clusters_dir(self) -> Path:
        return self.root / "clusters"

    @property
    def metrics_dir(self) -> Path:
        return self.root / "metrics"

    @property
    def reports_dir(self) -> Path:
        return self.root / "reports"

    @property
    def exports_dir(self) -> Path:
        return self.root / "exports"

    @property
    def lexicons_dir(self) -> Path:
        return self.root / "lexicons"

    def ensure_layout(self) -> None:
        for d in (
            self.root,
            self.posts_path.parent,
            self.topics_dir,
            self.subsets_dir,
            self.labels_dir,
            self.clusters_dir,
            self.metrics_dir,
            self.reports_dir,
            self.exports_dir,
            self.lexicons_dir,
        ):
            d.mkdir(parents=True, exist_ok=True)

    # -- atomic file helpers ----------------------------------------------

    def write_bytes(self, path: Path, data: bytes) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_name(path.name + ".tmp")
        tmp.write_bytes(data)
        os.replace(tmp, path)

    def write_text(self, path: Path, text: str) -> None:
        self.write_bytes(path, text.encode("utf-8"))

    def write_json(self, path: Path, obj) -> None:
        self.write_text(path, json.dumps(obj, sort_keys=True, indent=2) + "\n")

    def read_json(self, path: Path):
        return json.loads(path.read_text("utf-8"))

    # -- config -----------------------------------------------------------

    def load_config(self) -> dict:
        if self.config_path.exists():
            return self.read_json(self.config_path)
        return {}

    def save_config(self, cfg: dict) -> None:
        self.write_json(self.config_path, cfg)

    # -- store readers -----------------------------------------------------

    def is_ingested(self) -> bool:
        return self.posts_path.exists() and self.threads_path.exists()

    def iter_posts(self) -> Iterator[Post]:
        if not self.posts_path.exists():
            return
        with self.posts_path.open("r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    yield Post.from_record(json.loads(line))

    def load_posts(self) -> list[Post]:
        return list(self.iter_posts())

    def thread_index(self) -> dict:
        if not self.threads_path.exists():
            return {}
        return self.read_json(self.threads_path)

    def load_thread(self, thread_id: str) -> tuple[Thread, list[Post]]:
        """Thread plus its posts in created_at order, ties broken by post_id."""
        index = self.thread_index()
        if thread_id not in index:
            raise ThreadNotFound(f"thread {thread_id!r} not in workspace")
        posts = [p for p in self.iter_posts() if p.thread_id == thread_id]
        posts.sort(key=lambda p: (p.created_at, p.post_id))
        thread = Thread(
            thread_id=thread_id,
            post_ids=[p.post_id for p in posts],
            subreddit=index[thread_id]["subreddit"],
        )
        return thread, posts

    def posts_by_thread(self) -> dict[str, list[Post]]:
        """All posts grouped by thread, each group in traversal order."""
        groups: dict[str, list[Post]] = {}
        for p in self.iter_posts():
            groups.setdefault(p.thread_id, []).append(p)
        for posts in groups.values():
            posts.sort(key=lambda p: (p.created_at, p.post_id))
        return groups


# -- ingestion --------------------------------------------------------------


def _strip_kind_prefix(value: str) -> str:
    for pfx in _KIND_PREFIXES:
        if value.startswith(pfx):
            return value[len(pfx):]
    return value


def _author_hash(author: str, salt: str) -> str:
    return hashlib.blake2b((salt + ":" + author).encode("utf-8"), digest_size=8).hexdigest()


@dataclass
class _Raw:
    """A parsed dump record before parent resolution."""

    post_id: str
    thread_id: str
    parent_id: str | None
    author_hash: str
    created_at: int
    title: str | None
    body: str
    score: int
    source_root: bool  # parent_id absent in the source record


def _parse_record(obj: dict, field_map: dict, salt: str) -> _Raw | None:
    def get(name):
        return obj.get(field_map.get(name, name))

    post_id = get("id")
    link_id = get("link_id")
    body = get("body")
    title = get("title")
    if not isinstance(post_id, str) or not post_id:
        return None
    if not isinstance(link_id, str) or not link_id:
        return None
    if not isinstance(body, str) and not isinstance(title, str):
        return None
    parent = get("parent_id")
    if parent is not None and not isinstance(parent, str):
        return None
    try:
        created = int(get("created_utc") or 0)
        score = int(get("score") if get("score") is not None else 0)
    except (TypeError, ValueError):
        return None
    author = get("author")
    if not isinstance(author, str) or not author:
        author = "[deleted]"
    thread_id = _strip_kind_prefix(link_id)
    parent_id = _strip_kind_prefix(parent) if parent else None
    # pushshift parents of top-level comments point at the submission
    # fullname; that resolves to the root post below, which is correct.
    return _Raw(
        post_id=post_id,
        thread_id=thread_id,
        parent_id=parent_id,
        author_hash=_author_hash(author, salt),
        created_at=created,
        title=title if isinstance(title, str) and title else None,
        body=body if isinstance(body, str) else "",
        score=score,
        source_root=parent is None,
    )


def _resolve_thread(
    thread_id: str,
    existing: list[Post],
    fresh: list[_Raw],
    policy: str,
    stats: IngestStats,
) -> list[Post]:
    """Pick the thread root, resolve parents, and apply the orphan policy.

    Returns the posts to keep for this thread.  Invariants afterwards:
    exactly one root; every non-root parent_id resolves within the thread;
    every kept post is reachable from the root.
    """
    root: Post | None = next((p for p in existing if p.is_root), None)
    posts: dict[str, Post] = {p.post_id: p for p in existing}

    for raw in fresh:
        is_root = raw.source_root and root is None
        post = Post(
            post_id=raw.post_id,
            thread_id=thread_id,
            parent_id=None if is_root else raw.parent_id,
            author_hash=raw.author_hash,
            created_at=raw.created_at,
            title=raw.title,
            body=raw.body,
            score=raw.score,
            is_root=is_root,
            orphan=False,
        )
        posts[post.post_id] = post
        if is_root:
            root = post

    if root is None:
        # No root record anywhere in the dump: nothing to attach orphans
        # to, so the whole thread is dropped under either policy.
        stats.dropped_orphans += len(fresh)
        return []

    unresolved = [
        p
        for p in posts.values()
        if not p.is_root
        and (p.parent_id is None or p.parent_id == p.post_id or p.parent_id not in posts)
    ]

    if policy == "attach-root":
        for p in unresolved:
            p.parent_id = root.post_id
            p.orphan = True
        _cut_cycles(posts, root)
        return list(posts.values())

    # drop policy: discard unresolved posts and everything under them
    for p in unresolved:
        del posts[p.post_id]
    for p in _unreachable(posts, root):
        del posts[p.post_id]
    stats.dropped_orphans += sum(1 for raw in fresh if raw.post_id not in posts)
    return list(posts.values())


def _cut_cycles(posts: dict[str, Post], root: Post) -> None:
    """Reattach reply cycles under the root, touching as little as possible.

    Posts unreachable from the root form components that each contain one
    parent-pointer cycle; cutting the smallest cycle member per component
    (reparent to root, flag orphan) makes the whole component reachable
    while descendants keep their real parents.
    """
    unreachable = {p.post_id for p in _unreachable(posts, root)}
    handled: set[str] = set()
    for pid in sorted(unreachable):
        if pid in handled:
            continue
        path: list[str] = []
        position: dict[str, int] = {}
        cur = pid
        while cur in unreachable and cur not in handled and cur not in position:
            position[cur] = len(path)
            path.append(cur)
            cur = posts[cur].parent_id
        if cur in position:  # walked into a fresh cycle: cut its smallest member
            entry = min(path[position[cur]:])
            posts[entry].parent_id = root.post_id
            posts[entry].orphan = True
        handled.update(path)  # the walked path now reaches the root


def _unreachable(posts: dict[str, Post], root: Post) -> list[Post]:
    children: dict[str, list[str]] = {}
    for p in posts.values():
        if not p.is_root and p.parent_id in posts:
            children.setdefault(p.parent_id, []).append(p.post_id)
    seen = {root.post_id}
    stack = [root.post_id]
    while stack:
        for child in children.get(stack.pop(), ()):
            if child not in seen:
                seen.add(child)
                stack.append(child)
    return [p for p in posts.values() if p.post_id not in seen]


def ingest(
    ws: Workspace,
    lines: Iterable[str],
    orphan_policy: str = "attach-root",
    salt: str | None = None,
    field_map: dict | None = None,
    subreddit_default: str = "",
) -> IngestStats:
    """Ingest a newline-delimited JSON dump into the workspace store.

    Malformed lines and duplicate post ids are skipped and counted, never
    fatal.  Orphans (posts whose parent is missing from the dump) are
    attached to the thread root and flagged, or dropped, per
    ``orphan_policy``.  Author names are replaced by salted hashes.
    """
    if orphan_policy not in ORPHAN_POLICIES:
        raise ValueError(f"orphan_policy must be one of {ORPHAN_POLICIES}")
    ws.ensure_layout()
    cfg = ws.load_config()
    if salt is None:
        salt = cfg.get("salt", DEFAULT_SALT)
    if field_map is None:
        field_map = cfg.get("field_map", {})

    stats = IngestStats()
    existing: dict[str, list[Post]] = {}
    existing_ids: set[str] = set()
    subreddit_of: dict[str, str] = {}
    for p in ws.iter_posts():
        existing.setdefault(p.thread_id, []).append(p)
        existing_ids.add(p.post_id)
    for tid, meta in ws.thread_index().items():
        subreddit_of[tid] = meta.get("subreddit", "")

    fresh: dict[str, list[_Raw]] = {}
    seen_ids: set[str] = set(existing_ids)
    for line in lines:
        line = line.strip()
        if not line:
            continue
        stats.records += 1
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            stats.malformed += 1
            continue
        if not isinstance(obj, dict):
            stats.malformed += 1
            continue
        raw = _parse_record(obj, field_map, salt)
        if raw is None:
            stats.malformed += 1
            continue
        if raw.post_id in seen_ids:
            stats.duplicates += 1
            continue
        seen_ids.add(raw.post_id)
        fresh.setdefault(raw.thread_id, []).append(raw)
        sub = obj.get(field_map.get("subreddit", "subreddit"))
        if isinstance(sub, str) and sub:
            subreddit_of.setdefault(raw.thread_id, sub)

    store: list[Post] = []
    for tid in sorted(set(existing) | set(fresh)):
        kept = _resolve_thread(tid, existing.get(tid, []), fresh.get(tid, []), orphan_policy, stats)
        store.extend(kept)

    store.sort(key=lambda p: (p.thread_id, p.created_at, p.post_id))
    stats.posts = sum(1 for p in store if p.post_id not in existing_ids)
    stats.orphans = sum(1 for p in store if p.orphan)
    stats.total_posts = len(store)

    index: dict[str, dict] = {}
    for p in store:
        meta = index.setdefault(
            p.thread_id,
            {"subreddit": subreddit_of.get(p.thread_id, subreddit_default), "root_id": "", "n_posts": 0},
        )
        meta["n_posts"] += 1
        if p.is_root:
            meta["root_id"] = p.post_id
    stats.threads = len(index)

    lines_out = "".join(json.dumps(p.to_record(), sort_keys=True) + "\n" for p in store)
    ws.write_text(ws.posts_path, lines_out)
    ws.write_json(ws.threads_path, index)

    cfg.setdefault("salt", salt)
    cfg.setdefault("field_map", field_map)
    cfg["orphan_policy"] = orphan_policy
    ws.save_config(cfg)
    return stats


def ingest_file(ws: Workspace, path: str | Path, **kwargs) -> IngestStats:
    with open(path, "r", encoding="utf-8") as fh:
        return ingest(ws, fh, **kwargs)
