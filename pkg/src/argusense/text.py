"""Word tokenization and whole-word keyword matching.

All matching in the pipeline is case-insensitive and whole-word:
"gmo" must not match inside "pygmoid", and "gmos" does not match the
keyword "gmo".  Multiword keywords match as contiguous word sequences,
so punctuation and hyphens between words are ignored ("gene-editing"
matches the keyword "gene editing").
"""

from __future__ import annotations

import re

WORD_RE = re.compile(r"\w+")


def tokens(text: str) -> list[str]:
    """Casefolded word tokens of ``text`` (Unicode word characters)."""
    return [m.group(0).casefold() for m in WORD_RE.finditer(text)]


def token_spans(text: str) -> list[tuple[str, int, int]]:
    """Tokens with their (start, end) character offsets, original casing."""
    return [(m.group(0), m.start(), m.end()) for m in WORD_RE.finditer(text)]


def phrase_tokens(keyword: str) -> tuple[str, ...]:
    return tuple(tokens(keyword))


def find_phrase(toks: list[str], phrase: tuple[str, ...]) -> int | None:
    """Index of the first occurrence of ``phrase`` as a contiguous token
    run in ``toks``, or None."""
    if not phrase:
        return None
    n, k = len(toks), len(phrase)
    first = phrase[0]
    for i in range(n - k + 1):
        if toks[i] == first and tuple(toks[i : i + k]) == phrase:
            return i
    return None


def count_phrase(toks: list[str], phrase: tuple[str, ...]) -> int:
    """Number of (possibly overlapping) occurrences of ``phrase`` in ``toks``."""
    if not phrase:
        return 0
    n, k = len(toks), len(phrase)
    return sum(1 for i in range(n - k + 1) if tuple(toks[i : i + k]) == phrase)


def contains_any_keyword(text: str, keywords: list[str] | tuple[str, ...]) -> bool:
    toks = tokens(text)
    return any(find_phrase(toks, phrase_tokens(kw)) is not None for kw in keywords)


def post_text(title: str | None, body: str) -> str:
    """Text a post is matched and classified on: title plus body."""
    if title:
        return title + "\n" + body if body else title
    return body


def word_count(text: str) -> int:
    """Whitespace-delimited token count (post-length metric)."""
    return len(text.split())
