"""Deterministic reference backends.

These stand in for the pretrained models an adapter would provide: a
capitalization-based entity tagger, a premise-marker/cue-lexicon stance
classifier, and TF-IDF cosine similarity.  They are rule-based and pure,
so every downstream pipeline stage is reproducible without model
weights.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from ..corpus import Post
from ..relevance import Aspect
from ..text import find_phrase, count_phrase, phrase_tokens, token_spans, tokens
from .types import (
    STANCE_AGAINST,
    STANCE_FOR,
    STANCE_NONE,
    ArgumentLabel,
    BackendHandle,
    EntityMention,
)

STOPWORDS = frozenset(
    """
    a about above after again against all am an and any are as at be because
    been before being below between both but by can cannot could did do does
    doing down during each few for from further had has have having he her
    here hers herself him himself his how i if in into is it its itself just
    me more most my myself no nor not now of off on once only or other our
    ours ourselves out over own same she should so some such than that the
    their theirs them themselves then there these they this those through to
    too under until up very was we were what when where which while who whom
    why will with would you your yours yourself yourselves
    """.split()
)

_SENTENCE_BREAKS = ".!?\n"


@dataclass
class Lexicon:
    """Premise markers and stance cue lists for the rule-based classifier."""

    premise_markers: list[str]
    positive_cues: list[str]
    negative_cues: list[str]

    FILES = ("premise_markers", "positive_cues", "negative_cues")

    def save(self, directory: Path) -> None:
        directory.mkdir(parents=True, exist_ok=True)
        for name in self.FILES:
            terms = getattr(self, name)
            (directory / f"{name}.txt").write_text(
                "".join(t + "\n" for t in terms), encoding="utf-8"
            )

    @classmethod
    def load(cls, directory: Path) -> "Lexicon":
        parts = {}
        for name in cls.FILES:
            path = directory / f"{name}.txt"
            parts[name] = [
                line.strip().casefold()
                for line in path.read_text("utf-8").splitlines()
                if line.strip()
            ]
        return cls(**parts)


def default_lexicon() -> Lexicon:
    return Lexicon(
        premise_markers=[
            "because", "since", "therefore", "thus", "hence", "so",
            "consequently", "as a result", "due to", "given that",
            "for this reason", "that is why", "which means", "it follows that",
        ],
        positive_cues=[
            "help", "helps", "helped", "helpful", "benefit", "benefits",
            "beneficial", "good", "great", "better", "best", "safe", "safely",
            "effective", "efficient", "improve", "improves", "improved",
            "advantage", "advantages", "support", "supports", "promising",
            "sustainable", "healthy", "progress",
        ],
        negative_cues=[
            "harm", "harms", "harmful", "bad", "worse", "worst", "dangerous",
            "danger", "risk", "risks", "risky", "toxic", "cancer", "disease",
            "damage", "damages", "avoid", "avoids", "threat", "threatens",
            "kill", "kills", "unsafe", "unhealthy", "contaminate",
            "contamination", "failure",
        ],
    )


# -- named entities ----------------------------------------------------------


def reference_ner(text: str) -> list[EntityMention]:
    """Maximal runs of capitalized words as entity mentions (type "other").

    Stopwords never join a run; a single-word run at a sentence start is
    discarded ("Great harvest" yields nothing, "I bought John Deere
    parts" yields "John Deere").  Spans are byte offsets into the UTF-8
    encoding of ``text``.
    """
    spans = token_spans(text)
    if not spans:
        return []

    def qualifies(tok: str) -> bool:
        return tok[0].isupper() and tok.casefold() not in STOPWORDS

    def sentence_initial(start: int) -> bool:
        i = start - 1
        while i >= 0 and text[i] in " \t":
            i -= 1
        return i < 0 or text[i] in _SENTENCE_BREAKS

    # byte offset of each character position
    byte_at = [0] * (len(text) + 1)
    b = 0
    for i, ch in enumerate(text):
        byte_at[i] = b
        b += len(ch.encode("utf-8"))
    byte_at[len(text)] = b

    runs: list[list[tuple[str, int, int]]] = []
    current: list[tuple[str, int, int]] = []
    for tok, start, end in spans:
        if qualifies(tok):
            if current:
                gap = text[current[-1][2] : start]
                if gap.strip() == "" and "\n" not in gap:
                    current.append((tok, start, end))
                    continue
                runs.append(current)
            current = [(tok, start, end)]
        else:
            if current:
                runs.append(current)
                current = []
    if current:
        runs.append(current)

    mentions = []
    for run in runs:
        if len(run) == 1 and sentence_initial(run[0][1]):
            continue
        start, end = run[0][1], run[-1][2]
        mentions.append(
            EntityMention(
                text=text[start:end],
                entity_type="other",
                start=byte_at[start],
                end=byte_at[end],
            )
        )
    return mentions


def detect_aspects(posts: Sequence[Post], min_count: int, backend) -> list[Aspect]:
    """Discover aspects from entity mentions in thread-starting posts.

    Mentions are grouped by casefolded surface form and counted by the
    number of distinct threads they appear in (not token frequency).
    Entities reaching ``min_count`` threads come back as discovered
    aspects, most frequent first, ties by name.
    """
    backend.handle.require("ner")
    texts = [p.text for p in posts]
    per_text = backend.ner(texts)
    threads_of: dict[str, set[str]] = {}
    surface_counts: dict[str, Counter] = {}
    for post, mentions in zip(posts, per_text):
        for m in mentions:
            key = m.text.casefold()
            threads_of.setdefault(key, set()).add(post.thread_id)
            surface_counts.setdefault(key, Counter())[m.text] += 1

    found = []
    for key, threads in threads_of.items():
        if len(threads) < min_count:
            continue
        surfaces = surface_counts[key]
        name = min(surfaces, key=lambda s: (-surfaces[s], s))
        found.append((len(threads), name, key))
    found.sort(key=lambda t: (-t[0], t[1]))
    return [Aspect(name=name, keywords=[key], provenance="discovered") for _, name, key in found]


# -- lexicon stance classifier -------------------------------------------------


def _earliest_aspect(toks: list[str], aspects: Sequence[Aspect]) -> Aspect | None:
    """Aspect whose keyword occurs earliest; ties go to list order."""
    best: tuple[int, int] | None = None
    best_aspect = None
    for order, aspect in enumerate(aspects):
        for kw in aspect.keywords:
            pos = find_phrase(toks, phrase_tokens(kw))
            if pos is not None:
                key = (pos, order)
                if best is None or key < best:
                    best = key
                    best_aspect = aspect
    return best_aspect


def lexicon_classify(
    posts: Sequence[Post], aspects: Sequence[Aspect], lexicon: Lexicon, backend_id: str = "lexicon"
) -> list[ArgumentLabel]:
    """One label per post: argumentative for an aspect iff the post
    mentions an aspect keyword, contains a premise marker, and its stance
    cues are unbalanced; stance is the sign of positive minus negative
    cue counts."""
    marker_phrases = [phrase_tokens(m) for m in lexicon.premise_markers]
    pos_phrases = [phrase_tokens(c) for c in lexicon.positive_cues]
    neg_phrases = [phrase_tokens(c) for c in lexicon.negative_cues]

    labels = []
    for post in posts:
        toks = tokens(post.text)
        aspect = _earliest_aspect(toks, aspects)
        stance = STANCE_NONE
        if aspect is not None and any(find_phrase(toks, m) is not None for m in marker_phrases):
            balance = sum(count_phrase(toks, c) for c in pos_phrases) - sum(
                count_phrase(toks, c) for c in neg_phrases
            )
            if balance > 0:
                stance = STANCE_FOR
            elif balance < 0:
                stance = STANCE_AGAINST
        labels.append(
            ArgumentLabel(
                post_id=post.post_id,
                aspect=aspect.name if aspect else None,
                stance=stance,
                confidence=1.0,
                backend_id=backend_id,
            )
        )
    return labels


# -- TF-IDF cosine similarity ---------------------------------------------------


def _tfidf_vectors(texts: Sequence[str]) -> list[dict[str, float]]:
    docs = [[t for t in tokens(text) if t not in STOPWORDS] for text in texts]
    n = len(docs)
    df: Counter = Counter()
    for doc in docs:
        df.update(set(doc))
    idf = {t: math.log((1 + n) / (1 + d)) + 1.0 for t, d in df.items()}
    vectors = []
    for doc in docs:
        counts = Counter(doc)
        vec = {t: c * idf[t] for t, c in counts.items()}
        norm = math.sqrt(sum(x * x for x in vec.values()))
        vectors.append({t: x / norm for t, x in vec.items()} if norm > 0 else {})
    return vectors


def tfidf_pairwise(texts: Sequence[str]) -> list[list[float]]:
    """Cosine similarity of L2-normalized TF-IDF vectors over the given
    corpus (idf smoothed: ln((1+N)/(1+df)) + 1).  Texts with no surviving
    tokens score 0 against everything and 1 to themselves."""
    vectors = _tfidf_vectors(texts)
    n = len(texts)
    matrix = [[0.0] * n for _ in range(n)]
    for i in range(n):
        matrix[i][i] = 1.0
        vi = vectors[i]
        if not vi:
            continue
        for j in range(i + 1, n):
            vj = vectors[j]
            if not vj:
                continue
            if len(vj) < len(vi):
                vi_, vj_ = vj, vi
            else:
                vi_, vj_ = vi, vj
            s = sum(x * vj_.get(t, 0.0) for t, x in vi_.items())
            s = min(1.0, max(0.0, s))
            matrix[i][j] = matrix[j][i] = s
    return matrix


# -- the backend object ----------------------------------------------------------


class ReferenceBackend:
    """Bundles the rule-based capabilities behind the common backend surface."""

    kind = "reference"
    capabilities = frozenset({"classify", "similarity", "ner"})

    def __init__(self, lexicon: Lexicon | None = None, backend_id: str = "lexicon"):
        self.lexicon = lexicon or default_lexicon()
        self.backend_id = backend_id

    @property
    def handle(self) -> BackendHandle:
        return BackendHandle(kind=self.kind, backend_id=self.backend_id, capabilities=self.capabilities)

    def classify(self, posts: Sequence[Post], aspects: Sequence[Aspect]) -> list[ArgumentLabel]:
        return lexicon_classify(posts, aspects, self.lexicon, self.backend_id)

    def pairwise(self, texts: Sequence[str]) -> list[list[float]]:
        return tfidf_pairwise(texts)

    def ner(self, texts: Sequence[str]) -> list[list[EntityMention]]:
        return [reference_ner(t) for t in texts]
