"""Client for external model adapters.

An adapter is a child process speaking newline-delimited JSON on its
standard streams: one handshake line declaring protocol, version, and
capabilities, then one JSON response per request, matched by id in any
order.  The client serializes writes, allows multiple in-flight
requests, and surfaces per-request errors without killing the process.
"""

from __future__ import annotations

import itertools
import json
import shlex
import subprocess
import threading
from typing import Sequence

from ..corpus import Post
from ..relevance import Aspect
from ..text import tokens
from .reference import _earliest_aspect
from .types import (
    STANCES,
    STANCE_NONE,
    ArgumentLabel,
    BackendError,
    BackendHandle,
    EntityMention,
)

PROTOCOL_NAME = "argusense-adapter"
PROTOCOL_VERSION = 1


class _Pending:
    def __init__(self):
        self.event = threading.Event()
        self.response: dict | None = None
        self.failure: str | None = None

    def result(self, timeout: float) -> dict:
        if not self.event.wait(timeout):
            raise BackendError(f"adapter request timed out after {timeout:.0f}s")
        if self.failure is not None:
            raise BackendError(self.failure)
        assert self.response is not None
        return self.response


class AdapterClient:
    """Owns one adapter process; thread-safe request/response by id."""

    def __init__(self, cmd: str | Sequence[str], timeout: float = 60.0, handshake_timeout: float = 30.0):
        args = shlex.split(cmd) if isinstance(cmd, str) else list(cmd)
        self.timeout = timeout
        self._proc = subprocess.Popen(
            args,
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            encoding="utf-8",
            bufsize=1,
        )
        self._ids = itertools.count(1)
        self._write_lock = threading.Lock()
        self._pending_lock = threading.Lock()
        self._pending: dict[int, _Pending] = {}
        self._handshake: dict | None = None
        self._handshake_event = threading.Event()
        self._handshake_error: str | None = None
        self._dead: str | None = None
        self._reader = threading.Thread(target=self._read_loop, daemon=True)
        self._reader.start()
        if not self._handshake_event.wait(handshake_timeout):
            self.close()
            raise BackendError("adapter handshake timed out")
        if self._handshake_error:
            self.close()
            raise BackendError(self._handshake_error)
        hs = self._handshake or {}
        self.capabilities = frozenset(c for c in hs.get("capabilities", []) if isinstance(c, str))
        self.embed_dim = hs.get("embed_dim")
        if "embed" in self.capabilities and not isinstance(self.embed_dim, int):
            raise BackendError("adapter declares embed capability without embed_dim")
        self.backend_id = hs.get("name", "adapter")

    # -- process I/O -------------------------------------------------------

    def _read_loop(self) -> None:
        stream = self._proc.stdout
        assert stream is not None
        first = True
        for line in stream:
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                if not isinstance(obj, dict):
                    raise json.JSONDecodeError("not a JSON object", line, 0)
            except json.JSONDecodeError:
                if first:
                    self._handshake_error = f"malformed handshake line: {line[:200]}"
                    self._handshake_event.set()
                    return
                self._fail_all(f"malformed adapter response line: {line[:200]}")
                return
            if first:
                first = False
                if obj.get("protocol") != PROTOCOL_NAME or obj.get("version") != PROTOCOL_VERSION:
                    self._handshake_error = (
                        f"adapter protocol/version mismatch: expected "
                        f"{PROTOCOL_NAME} v{PROTOCOL_VERSION}, got {obj.get('protocol')!r} "
                        f"v{obj.get('version')!r}"
                    )
                else:
                    self._handshake = obj
                self._handshake_event.set()
                if self._handshake_error:
                    return
                continue
            rid = obj.get("id")
            if not isinstance(rid, int):
                continue  # id-less notices (e.g. replies to malformed requests)
            with self._pending_lock:
                pending = self._pending.pop(rid, None)
            if pending is not None:
                pending.response = obj
                pending.event.set()
        self._fail_all("adapter process closed its output stream")
        if not self._handshake_event.is_set():
            self._handshake_error = "adapter exited before handshake"
            self._handshake_event.set()

    def _fail_all(self, message: str) -> None:
        self._dead = message
        with self._pending_lock:
            pending = list(self._pending.values())
            self._pending.clear()
        for p in pending:
            p.failure = message
            p.event.set()

    def submit(self, op: str, **fields) -> _Pending:
        if self._dead:
            raise BackendError(self._dead)
        rid = next(self._ids)
        pending = _Pending()
        with self._pending_lock:
            self._pending[rid] = pending
        payload = {"id": rid, "op": op, **fields}
        line = json.dumps(payload) + "\n"
        try:
            with self._write_lock:
                assert self._proc.stdin is not None
                self._proc.stdin.write(line)
                self._proc.stdin.flush()
        except (BrokenPipeError, ValueError, OSError) as exc:
            with self._pending_lock:
                self._pending.pop(rid, None)
            raise BackendError(f"adapter write failed: {exc}") from exc
        return pending

    def request(self, op: str, **fields) -> dict:
        response = self.submit(op, **fields).result(self.timeout)
        if "error" in response:
            raise BackendError(f"adapter error: {response['error']}")
        return response

    def close(self) -> None:
        try:
            if self._proc.stdin and not self._proc.stdin.closed:
                self._proc.stdin.close()
        except OSError:
            pass
        try:
            self._proc.wait(timeout=5)
        except subprocess.TimeoutExpired:
            self._proc.terminate()
            try:
                self._proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                self._proc.kill()
                self._proc.wait()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def adapter_call(client: AdapterClient, request: dict) -> dict:
    """Low-level single call: sends ``request`` (op plus op-specific fields)
    and returns the matched response."""
    req = dict(request)
    op = req.pop("op")
    req.pop("id", None)  # ids are client-managed
    return client.request(op, **req)


_TYPE_MAP = {"person", "location", "organization"}


class AdapterBackend:
    """Backend surface over an adapter process."""

    kind = "adapter"

    def __init__(self, client: AdapterClient, batch_size: int = 32):
        self.client = client
        self.batch_size = batch_size
        self.capabilities = client.capabilities
        self.backend_id = client.backend_id

    @property
    def handle(self) -> BackendHandle:
        return BackendHandle(kind=self.kind, backend_id=self.backend_id, capabilities=self.capabilities)

    def close(self) -> None:
        self.client.close()

    def classify(self, posts: Sequence[Post], aspects: Sequence[Aspect]) -> list[ArgumentLabel]:
        """Aspect assignment (earliest keyword mention) happens host-side;
        the adapter judges stance for the assigned aspect.  On transport
        failure the error carries the failed batch's post ids and the
        labels already produced."""
        self.handle.require("classify")
        assigned: dict[str, Aspect | None] = {}
        order: list[Post] = list(posts)
        done: dict[str, ArgumentLabel] = {}
        groups: dict[str, list[Post]] = {}
        for post in order:
            aspect = _earliest_aspect(tokens(post.text), aspects)
            assigned[post.post_id] = aspect
            if aspect is None:
                done[post.post_id] = ArgumentLabel(
                    post_id=post.post_id, aspect=None, stance=STANCE_NONE,
                    confidence=1.0, backend_id=self.backend_id,
                )
            else:
                groups.setdefault(aspect.name, []).append(post)

        for aspect_name, members in groups.items():
            for start in range(0, len(members), self.batch_size):
                batch = members[start : start + self.batch_size]
                try:
                    resp = self.client.request(
                        "classify", aspect=aspect_name, texts=[p.text for p in batch]
                    )
                except BackendError as exc:
                    partial = [done[p.post_id] for p in order if p.post_id in done]
                    raise BackendError(
                        str(exc), failed_ids=[p.post_id for p in batch], partial=partial
                    ) from exc
                labels = resp.get("labels", [])
                scores = resp.get("scores", [[]] * len(batch))
                if len(labels) != len(batch):
                    partial = [done[p.post_id] for p in order if p.post_id in done]
                    raise BackendError(
                        f"adapter returned {len(labels)} labels for {len(batch)} texts",
                        failed_ids=[p.post_id for p in batch],
                        partial=partial,
                    )
                for post, stance, row in zip(batch, labels, scores):
                    if stance not in STANCES:
                        stance = STANCE_NONE
                    confidence = 1.0
                    if isinstance(row, list) and len(row) == 3:
                        confidence = min(1.0, max(0.0, float(row[STANCES.index(stance)])))
                    done[post.post_id] = ArgumentLabel(
                        post_id=post.post_id,
                        aspect=aspect_name,
                        stance=stance,
                        confidence=confidence,
                        backend_id=self.backend_id,
                    )
        return [done[p.post_id] for p in order]

    def pairwise(self, texts: Sequence[str]) -> list[list[float]]:
        self.handle.require("similarity")
        n = len(texts)
        matrix = [[0.0] * n for _ in range(n)]
        for i in range(n):
            matrix[i][i] = 1.0
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for start in range(0, len(pairs), self.batch_size):
            chunk = pairs[start : start + self.batch_size]
            resp = self.client.request(
                "similarity", pairs=[[texts[i], texts[j]] for i, j in chunk]
            )
            scores = resp.get("scores", [])
            if len(scores) != len(chunk):
                raise BackendError(f"adapter returned {len(scores)} scores for {len(chunk)} pairs")
            for (i, j), s in zip(chunk, scores):
                s = min(1.0, max(0.0, float(s)))
                matrix[i][j] = matrix[j][i] = s
        return matrix

    def ner(self, texts: Sequence[str]) -> list[list[EntityMention]]:
        self.handle.require("ner")
        out: list[list[EntityMention]] = []
        for start in range(0, len(texts), self.batch_size):
            batch = list(texts[start : start + self.batch_size])
            resp = self.client.request("ner", texts=batch)
            rows = resp.get("entities", [])
            if len(rows) != len(batch):
                raise BackendError(f"adapter returned {len(rows)} entity rows for {len(batch)} texts")
            for row in rows:
                mentions = []
                for ent in row:
                    etype = ent.get("type", "other")
                    if etype not in _TYPE_MAP:
                        etype = "other"
                    try:
                        mentions.append(
                            EntityMention(
                                text=str(ent.get("text", "")),
                                entity_type=etype,
                                start=int(ent.get("start", 0)),
                                end=int(ent.get("end", 0)),
                            )
                        )
                    except (ValueError, TypeError):
                        continue  # drop mentions with invalid spans
                out.append(mentions)
        return out

    def embed(self, texts: Sequence[str]) -> list[list[float]]:
        self.handle.require("embed")
        out: list[list[float]] = []
        for start in range(0, len(texts), self.batch_size):
            batch = list(texts[start : start + self.batch_size])
            resp = self.client.request("embed", texts=batch)
            vectors = resp.get("vectors", [])
            if len(vectors) != len(batch):
                raise BackendError(f"adapter returned {len(vectors)} vectors for {len(batch)} texts")
            for vec in vectors:
                if len(vec) != self.client.embed_dim:
                    raise BackendError(
                        f"embedding length {len(vec)} != declared embed_dim {self.client.embed_dim}"
                    )
                out.append([float(x) for x in vec])
        return out


def launch_adapter(cmd: str | Sequence[str], timeout: float = 60.0, batch_size: int = 32) -> AdapterBackend:
    return AdapterBackend(AdapterClient(cmd, timeout=timeout), batch_size=batch_size)
