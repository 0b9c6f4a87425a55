"""Capability providers: pretrained models or deterministic fakes.

Each provider serves one wire capability.  The fake providers need no
model runtime and are fully deterministic, so the protocol and the
pipeline integration can be tested without downloading weights.
"""

from __future__ import annotations

import hashlib
import math
import re
from dataclasses import dataclass

from .config import AdapterConfig

STANCE_ORDER = ("none", "for", "against")
_WORD = re.compile(r"\w+")


def _byte_offsets(text: str) -> list[int]:
    offsets = [0] * (len(text) + 1)
    total = 0
    for i, ch in enumerate(text):
        offsets[i] = total
        total += len(ch.encode("utf-8"))
    offsets[len(text)] = total
    return offsets


# -- fake providers ----------------------------------------------------------


class FakeEmbedder:
    """Feature-hashing bag-of-words embeddings, L2-normalized; identical
    strings map to identical vectors."""

    def __init__(self, dim: int):
        self.dim = dim

    def embed(self, texts):
        return [self._one(t) for t in texts]

    def _one(self, text: str):
        vec = [0.0] * self.dim
        for match in _WORD.finditer(text.casefold()):
            digest = hashlib.sha256(match.group(0).encode("utf-8")).digest()
            value = int.from_bytes(digest[:8], "big")
            vec[value % self.dim] += -1.0 if value & 1 else 1.0
        norm = math.sqrt(sum(x * x for x in vec))
        return [x / norm for x in vec] if norm else vec


class FakeSimilarity:
    def __init__(self, dim: int):
        self._embedder = FakeEmbedder(dim)

    def similarity(self, pairs):
        scores = []
        for s1, s2 in pairs:
            v1, v2 = self._embedder.embed([s1, s2])
            cos = sum(a * b for a, b in zip(v1, v2))
            scores.append(min(1.0, max(0.0, cos)))
        return scores


_POSITIVE = frozenset("good great help helps helpful benefit safe better improve support".split())
_NEGATIVE = frozenset("bad harm harmful danger dangerous risk toxic avoid worse threat".split())


class FakeClassifier:
    """Cue-count stance scoring with a softmax over (none, for, against);
    a post with no mention of the aspect stays none."""

    def classify(self, aspect: str, texts):
        labels, scores = [], []
        aspect_tokens = set(_WORD.findall(aspect.casefold()))
        for text in texts:
            tokens = [m.group(0) for m in _WORD.finditer(text.casefold())]
            mentions = aspect_tokens & set(tokens)
            pos = sum(1 for t in tokens if t in _POSITIVE)
            neg = sum(1 for t in tokens if t in _NEGATIVE)
            if not mentions:
                logits = (2.0, 0.0, 0.0)
            else:
                logits = (0.5, float(pos), float(neg))
            exp = [math.exp(l) for l in logits]
            total = sum(exp)
            probs = [e / total for e in exp]
            label = STANCE_ORDER[max(range(3), key=lambda i: (probs[i], -i))]
            labels.append(label)
            scores.append(probs)
        return labels, scores


class FakeNer:
    """Runs of capitalized words as untyped entities, byte-offset spans."""

    def ner(self, texts):
        out = []
        for text in texts:
            offsets = _byte_offsets(text)
            entities = []
            run: list[tuple[int, int]] = []
            for match in _WORD.finditer(text):
                token = match.group(0)
                if token[0].isupper():
                    if run and text[run[-1][1] : match.start()].strip():
                        entities.append(run)
                        run = []
                    run.append((match.start(), match.end()))
                elif run:
                    entities.append(run)
                    run = []
            if run:
                entities.append(run)
            out.append(
                [
                    {
                        "text": text[r[0][0] : r[-1][1]],
                        "type": "other",
                        "start": offsets[r[0][0]],
                        "end": offsets[r[-1][1]],
                    }
                    for r in entities
                ]
            )
        return out


# -- real model providers -----------------------------------------------------


class SentenceModel:
    """sentence-transformers wrapper serving both embed and similarity."""

    def __init__(self, model_id: str, device: str, batch_size: int):
        from sentence_transformers import SentenceTransformer

        self.model = SentenceTransformer(model_id, device=device)
        self.batch_size = batch_size
        self.dim = int(self.model.get_sentence_embedding_dimension())

    def embed(self, texts):
        vectors = self.model.encode(
            list(texts), batch_size=self.batch_size, normalize_embeddings=True,
            convert_to_numpy=True, show_progress_bar=False,
        )
        return [[float(x) for x in v] for v in vectors]

    def similarity(self, pairs):
        left = self.embed([a for a, _ in pairs])
        right = self.embed([b for _, b in pairs])
        scores = []
        for v1, v2 in zip(left, right):
            cos = sum(a * b for a, b in zip(v1, v2))
            scores.append(min(1.0, max(0.0, float(cos))))
        return scores


class ZeroShotClassifier:
    """Stance via zero-shot NLI: hypothesis templates for/against the aspect."""

    def __init__(self, model_id: str, device: str, batch_size: int, max_seq_len: int):
        from transformers import pipeline

        self.pipe = pipeline(
            "zero-shot-classification", model=model_id,
            device=-1 if device == "cpu" else device,
        )
        self.batch_size = batch_size
        self.max_seq_len = max_seq_len

    def classify(self, aspect: str, texts):
        labels_spec = [
            f"argues in favor of {aspect}",
            f"argues against {aspect}",
            f"makes no argument about {aspect}",
        ]
        labels, scores = [], []
        for text in texts:
            result = self.pipe(text[: self.max_seq_len * 6], labels_spec, multi_label=False)
            by_label = dict(zip(result["labels"], result["scores"]))
            p_for = by_label[labels_spec[0]]
            p_against = by_label[labels_spec[1]]
            p_none = by_label[labels_spec[2]]
            probs = [p_none, p_for, p_against]
            labels.append(STANCE_ORDER[max(range(3), key=lambda i: probs[i])])
            scores.append([float(p) for p in probs])
        return labels, scores


_NER_TYPE_MAP = {"PER": "person", "LOC": "location", "ORG": "organization"}


class TransformersNer:
    def __init__(self, model_id: str, device: str, batch_size: int):
        from transformers import pipeline

        self.pipe = pipeline(
            "token-classification", model=model_id, aggregation_strategy="simple",
            device=-1 if device == "cpu" else device,
        )
        self.batch_size = batch_size

    def ner(self, texts):
        out = []
        for text in texts:
            offsets = _byte_offsets(text)
            entities = []
            for ent in self.pipe(text):
                group = str(ent.get("entity_group", "")).upper()
                start, end = int(ent["start"]), int(ent["end"])
                entities.append(
                    {
                        "text": text[start:end],
                        "type": _NER_TYPE_MAP.get(group, "other"),
                        "start": offsets[start],
                        "end": offsets[end],
                    }
                )
            out.append(entities)
        return out


@dataclass
class LoadedProviders:
    providers: dict  # capability -> provider object
    embed_dim: int | None
    failures: dict  # capability -> error message


def load_providers(config: AdapterConfig) -> LoadedProviders:
    """Instantiate a provider per configured capability.

    Capabilities whose model fails to load are dropped (and reported),
    unless require_all is set; the caller decides whether an empty set is
    fatal.
    """
    providers: dict = {}
    failures: dict = {}
    embed_dim: int | None = None

    if config.fake:
        for cap in config.capabilities:
            if cap == "classify":
                providers[cap] = FakeClassifier()
            elif cap == "similarity":
                providers[cap] = FakeSimilarity(config.embed_dim)
            elif cap == "embed":
                providers[cap] = FakeEmbedder(config.embed_dim)
                embed_dim = config.embed_dim
            elif cap == "ner":
                providers[cap] = FakeNer()
        return LoadedProviders(providers, embed_dim, failures)

    sentence_model = None
    for cap in config.capabilities:
        try:
            if cap in ("similarity", "embed"):
                if sentence_model is None or config.model_for(cap) != sentence_model[0]:
                    model_id = config.model_for(cap)
                    sentence_model = (model_id, SentenceModel(model_id, config.device, config.batch_size))
                providers[cap] = sentence_model[1]
                if cap == "embed":
                    embed_dim = sentence_model[1].dim
            elif cap == "classify":
                providers[cap] = ZeroShotClassifier(
                    config.model_for(cap), config.device, config.batch_size, config.max_seq_len
                )
            elif cap == "ner":
                providers[cap] = TransformersNer(config.model_for(cap), config.device, config.batch_size)
        except Exception as exc:  # model loading can fail in many ways
            failures[cap] = f"{type(exc).__name__}: {exc}"
            if config.require_all:
                break
    return LoadedProviders(providers, embed_dim, failures)
