"""Built-in stub adapter process.

Serves the adapter wire protocol from the deterministic reference
implementations plus a feature-hashing sentence embedder, so the
adapter code path is exercisable without any model runtime:

    argusense classify --backend adapter --adapter-cmd "python -m argusense.backends.stub"
"""

from __future__ import annotations

import hashlib
import json
import math
import sys

from ..corpus import Post
from ..relevance import Aspect
from .adapter import PROTOCOL_NAME, PROTOCOL_VERSION
from .reference import default_lexicon, lexicon_classify, reference_ner, tfidf_pairwise
from .types import STANCES

EMBED_DIM = 384


def hashed_embedding(text: str, dim: int = EMBED_DIM) -> list[float]:
    """Deterministic bag-of-words feature hashing, L2-normalized.

    Identical strings map to identical vectors; token hashing uses
    blake2b so vectors are stable across processes and runs.
    """
    from ..text import tokens

    vec = [0.0] * dim
    for tok in tokens(text):
        digest = hashlib.blake2b(tok.encode("utf-8"), digest_size=8).digest()
        value = int.from_bytes(digest, "big")
        index = value % dim
        sign = 1.0 if (value >> 63) & 1 else -1.0
        vec[index] += sign
    norm = math.sqrt(sum(x * x for x in vec))
    if norm > 0:
        vec = [x / norm for x in vec]
    return vec


def _classify(aspect: str, texts: list[str], lexicon) -> dict:
    aspect_obj = Aspect(name=aspect, keywords=[aspect], provenance="expert")
    posts = [
        Post(
            post_id=str(i), thread_id="", parent_id=None, author_hash="",
            created_at=0, title=None, body=t, score=0, is_root=False,
        )
        for i, t in enumerate(texts)
    ]
    labels = lexicon_classify(posts, [aspect_obj], lexicon)
    out_labels = [l.stance for l in labels]
    scores = [[1.0 if s == c else 0.0 for c in STANCES] for s in out_labels]
    return {"labels": out_labels, "scores": scores}


def handle_request(obj: dict, lexicon) -> dict:
    op = obj.get("op")
    if op == "classify":
        return _classify(str(obj["aspect"]), list(obj["texts"]), lexicon)
    if op == "similarity":
        scores = []
        for s1, s2 in obj["pairs"]:
            if s1 == s2:
                scores.append(1.0)  # identity convention, even for stopword-only text
            else:
                scores.append(tfidf_pairwise([s1, s2])[0][1])
        return {"scores": scores}
    if op == "embed":
        return {"vectors": [hashed_embedding(t) for t in obj["texts"]]}
    if op == "ner":
        rows = []
        for text in obj["texts"]:
            rows.append(
                [
                    {"text": m.text, "type": m.entity_type, "start": m.start, "end": m.end}
                    for m in reference_ner(text)
                ]
            )
        return {"entities": rows}
    raise ValueError(f"unknown op {op!r}")


def serve(stdin=None, stdout=None) -> None:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    lexicon = default_lexicon()

    def emit(obj: dict) -> None:
        stdout.write(json.dumps(obj) + "\n")
        stdout.flush()

    emit(
        {
            "protocol": PROTOCOL_NAME,
            "version": PROTOCOL_VERSION,
            "capabilities": ["classify", "similarity", "embed", "ner"],
            "embed_dim": EMBED_DIM,
            "name": "argusense-stub",
        }
    )
    for line in stdin:
        line = line.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            if not isinstance(obj, dict):
                raise ValueError("request must be a JSON object")
        except (json.JSONDecodeError, ValueError) as exc:
            emit({"id": None, "error": f"malformed request: {exc}"})
            continue
        rid = obj.get("id")
        try:
            response = handle_request(obj, lexicon)
        except Exception as exc:  # per-request isolation: never kill the loop
            emit({"id": rid, "error": str(exc)})
            continue
        emit({"id": rid, **response})


def main() -> None:
    serve()


if __name__ == "__main__":
    main()
