"""Adapter protocol conformance checks.

Speaks the wire protocol directly over a fresh child process (no client
involved) so any adapter implementation can be validated: the built-in
stub, the model-backed adapter package, or a third-party one.
"""

from __future__ import annotations

import json
import queue
import shlex
import subprocess
import threading
from dataclasses import dataclass
from typing import Sequence

from .adapter import PROTOCOL_NAME, PROTOCOL_VERSION
from .types import STANCES


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


class _RawAdapter:
    """Line-oriented pipe to an adapter process with read timeouts."""

    def __init__(self, cmd: str | Sequence[str], timeout: float = 15.0):
        args = shlex.split(cmd) if isinstance(cmd, str) else list(cmd)
        self.timeout = timeout
        self.proc = subprocess.Popen(
            args, stdin=subprocess.PIPE, stdout=subprocess.PIPE, text=True,
            encoding="utf-8", bufsize=1,
        )
        self._lines: queue.Queue = queue.Queue()
        threading.Thread(target=self._pump, daemon=True).start()

    def _pump(self):
        assert self.proc.stdout is not None
        for line in self.proc.stdout:
            self._lines.put(line)
        self._lines.put(None)

    def send_line(self, line: str) -> None:
        assert self.proc.stdin is not None
        self.proc.stdin.write(line + "\n")
        self.proc.stdin.flush()

    def send(self, obj: dict) -> None:
        self.send_line(json.dumps(obj))

    def read_json(self) -> dict:
        line = self._lines.get(timeout=self.timeout)
        if line is None:
            raise EOFError("adapter closed its output stream")
        return json.loads(line)

    def close(self) -> None:
        try:
            if self.proc.stdin:
                self.proc.stdin.close()
        except OSError:
            pass
        try:
            self.proc.wait(timeout=5)
        except subprocess.TimeoutExpired:
            self.proc.kill()
            self.proc.wait()


def run_conformance(cmd: str | Sequence[str], timeout: float = 15.0) -> list[CheckResult]:
    """Run the protocol checks against the adapter launched by ``cmd``.

    Returns one result per check; all-ok means the adapter is usable by
    the pipeline.
    """
    results: list[CheckResult] = []
    seen_ids: list = []

    def check(name: str, ok: bool, detail: str = ""):
        results.append(CheckResult(name, bool(ok), detail))

    raw = _RawAdapter(cmd, timeout=timeout)
    try:
        # 1. handshake
        try:
            hs = raw.read_json()
        except Exception as exc:
            check("handshake", False, f"no parseable handshake line: {exc}")
            return results
        caps = hs.get("capabilities", [])
        check(
            "handshake",
            hs.get("protocol") == PROTOCOL_NAME
            and hs.get("version") == PROTOCOL_VERSION
            and isinstance(caps, list)
            and len(caps) > 0,
            f"got {hs!r}",
        )
        if "embed" in caps:
            check("handshake_embed_dim", isinstance(hs.get("embed_dim"), int), f"embed_dim={hs.get('embed_dim')!r}")

        def collect(expected_ids: set, also_null_error: bool = False):
            """Read until every expected id has answered (any order)."""
            got: dict = {}
            null_errors = 0
            budget = len(expected_ids) + (1 if also_null_error else 0) + 2
            while set(got) != expected_ids and budget > 0:
                obj = raw.read_json()
                budget -= 1
                rid = obj.get("id")
                if rid is None:
                    null_errors += 1
                    continue
                got[rid] = obj
                seen_ids.append(rid)
            return got, null_errors

        # 2./3. pipelined requests resolved by id, order-independent
        if "similarity" in caps:
            for rid in (101, 102, 103):
                raw.send({"id": rid, "op": "similarity", "pairs": [[f"text {rid}", f"text {rid}"]]})
            got, _ = collect({101, 102, 103})
            ok = set(got) == {101, 102, 103} and all("error" not in r for r in got.values())
            check("id_matching_out_of_order", ok, f"resolved ids {sorted(got)}")
            identity = got.get(101, {}).get("scores", [0.0])[0] if ok else 0.0
            check("similarity_identity", ok and identity >= 0.95, f"score(s,s)={identity}")

        # 4. per-request error isolation: malformed line, unknown op, then a valid request
        raw.send_line("this is not json")
        raw.send({"id": 201, "op": "definitely_not_an_op"})
        if "similarity" in caps:
            raw.send({"id": 202, "op": "similarity", "pairs": [["a b", "a b"]]})
            got, null_errors = collect({201, 202}, also_null_error=True)
        else:
            raw.send({"id": 202, "op": "ner", "texts": ["x"]})
            got, null_errors = collect({201, 202}, also_null_error=True)
        check("malformed_request_survives", null_errors >= 1, f"{null_errors} null-id error replies")
        check("unknown_op_is_request_error", "error" in got.get(201, {}), f"got {got.get(201)!r}")
        check("process_continues_after_errors", 202 in got and "error" not in got.get(202, {}), f"got {got.get(202)!r}")

        # 5. embed shape
        if "embed" in caps:
            raw.send({"id": 301, "op": "embed", "texts": ["one", "two"]})
            got, _ = collect({301})
            vectors = got.get(301, {}).get("vectors", [])
            ok = len(vectors) == 2 and all(len(v) == hs.get("embed_dim") for v in vectors)
            check("embed_shape", ok, f"{len(vectors)} vectors, dims {[len(v) for v in vectors]}")

        # 6. classify shape
        if "classify" in caps:
            raw.send({"id": 401, "op": "classify", "aspect": "widgets", "texts": ["widgets are good because they help", "hello"]})
            got, _ = collect({401})
            labels = got.get(401, {}).get("labels", [])
            scores = got.get(401, {}).get("scores", [])
            ok = (
                len(labels) == 2
                and all(l in STANCES for l in labels)
                and len(scores) == 2
                and all(isinstance(r, list) and len(r) == 3 for r in scores)
            )
            check("classify_shape", ok, f"labels={labels}, scores={scores}")

        # 7. ner shape
        if "ner" in caps:
            raw.send({"id": 501, "op": "ner", "texts": ["We visited John Deere today"]})
            got, _ = collect({501})
            rows = got.get(501, {}).get("entities", [])
            ok = len(rows) == 1 and all(
                {"text", "type", "start", "end"} <= set(e) for e in rows[0]
            )
            check("ner_shape", ok, f"entities={rows}")

        # 8. every id answered exactly once
        check("ids_answered_once", len(seen_ids) == len(set(seen_ids)), f"ids seen: {seen_ids}")
    finally:
        raw.close()
    return results


def assert_conformance(cmd: str | Sequence[str], timeout: float = 15.0) -> list[CheckResult]:
    results = run_conformance(cmd, timeout=timeout)
    failures = [r for r in results if not r.ok]
    if failures:
        lines = "\n".join(f"  {r.name}: {r.detail}" for r in failures)
        raise AssertionError(f"adapter conformance failures for {cmd!r}:\n{lines}")
    return results
