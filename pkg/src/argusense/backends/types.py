"""Shared types for the pluggable analysis backends."""

from __future__ import annotations

from dataclasses import dataclass, asdict

STANCE_NONE = "none"
STANCE_FOR = "for"
STANCE_AGAINST = "against"
STANCES = (STANCE_NONE, STANCE_FOR, STANCE_AGAINST)

ENTITY_TYPES = ("person", "location", "organization", "other")

CAPABILITIES = ("classify", "similarity", "embed", "ner")


class BackendError(Exception):
    """A backend or adapter failed.

    ``failed_ids`` carries the post ids of the batch that failed;
    ``partial`` holds any labels produced before the failure so callers
    can keep the processed prefix.
    """

    def __init__(self, message: str, failed_ids: list[str] | None = None, partial=None):
        super().__init__(message)
        self.failed_ids = failed_ids or []
        self.partial = partial


class CapabilityError(BackendError):
    """Operation invoked outside the backend's declared capabilities."""


@dataclass
class ArgumentLabel:
    """Aspect-anchored stance assigned to one post.

    A stance of "for"/"against" always carries the aspect the argument is
    anchored on; "none" may still carry an aspect (an aspect-based but
    non-argumentative post).
    """

    post_id: str
    aspect: str | None
    stance: str
    confidence: float = 1.0
    backend_id: str = ""

    def __post_init__(self):
        if self.stance not in STANCES:
            raise ValueError(f"stance must be one of {STANCES}, got {self.stance!r}")
        if self.stance != STANCE_NONE and not self.aspect:
            raise ValueError("a For/Against label requires an aspect")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError("confidence must be in [0, 1]")

    @property
    def is_argumentative(self) -> bool:
        return self.stance != STANCE_NONE

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ArgumentLabel":
        return cls(**d)


@dataclass
class EntityMention:
    """An entity found in text; span is (start, end) byte offsets into the
    UTF-8 encoding of the source text."""

    text: str
    entity_type: str
    start: int
    end: int

    def __post_init__(self):
        if self.entity_type not in ENTITY_TYPES:
            raise ValueError(f"entity_type must be one of {ENTITY_TYPES}")
        if not 0 <= self.start < self.end:
            raise ValueError("span must satisfy 0 <= start < end")


@dataclass
class SimilarityScore:
    pair: tuple[str, str]
    score: float


@dataclass
class BackendHandle:
    kind: str  # "reference" | "adapter"
    backend_id: str
    capabilities: frozenset[str]

    def require(self, capability: str) -> None:
        if capability not in self.capabilities:
            raise CapabilityError(
                f"backend {self.backend_id!r} does not declare the {capability!r} capability"
            )
