"""Pluggable analysis backends: deterministic reference implementations
and the external-adapter client, behind one capability-based surface."""

from __future__ import annotations

from typing import Sequence

from ..corpus import Post
from ..relevance import Aspect
from .adapter import AdapterBackend, AdapterClient, adapter_call, launch_adapter
from .evaluation import ClassScores, F1Report, eval_f1, eval_kappa
from .reference import (
    Lexicon,
    ReferenceBackend,
    default_lexicon,
    detect_aspects,
    lexicon_classify,
    reference_ner,
    tfidf_pairwise,
)
from .types import (
    CAPABILITIES,
    STANCES,
    STANCE_AGAINST,
    STANCE_FOR,
    STANCE_NONE,
    ArgumentLabel,
    BackendError,
    BackendHandle,
    CapabilityError,
    EntityMention,
    SimilarityScore,
)


def classify(posts: Sequence[Post], aspects: Sequence[Aspect], backend) -> list[ArgumentLabel]:
    """Exactly one label per post from the given backend; multi-aspect
    posts anchor on the aspect mentioned earliest."""
    if not aspects:
        raise ValueError("classify requires a non-empty aspect list")
    backend.handle.require("classify")
    return backend.classify(posts, aspects)


__all__ = [
    "AdapterBackend",
    "AdapterClient",
    "ArgumentLabel",
    "BackendError",
    "BackendHandle",
    "CAPABILITIES",
    "CapabilityError",
    "ClassScores",
    "EntityMention",
    "F1Report",
    "Lexicon",
    "ReferenceBackend",
    "STANCES",
    "STANCE_AGAINST",
    "STANCE_FOR",
    "STANCE_NONE",
    "SimilarityScore",
    "adapter_call",
    "classify",
    "default_lexicon",
    "detect_aspects",
    "eval_f1",
    "eval_kappa",
    "launch_adapter",
    "lexicon_classify",
    "reference_ner",
    "tfidf_pairwise",
]
