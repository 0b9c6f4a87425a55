"""The wire-protocol serving loop.

One handshake line, then a JSON response per request line, matched by
id.  Request failures come back as {"id": ..., "error": ...} without
killing the process; only a fatal model-load failure (no capability
loadable) exits nonzero, before any handshake is emitted.
"""

from __future__ import annotations

import json
import sys

from . import PROTOCOL_NAME, PROTOCOL_VERSION
from .config import AdapterConfig
from .models import LoadedProviders, load_providers


def handle_request(obj: dict, loaded: LoadedProviders) -> dict:
    op = obj.get("op")
    providers = loaded.providers
    if op not in providers:
        raise ValueError(f"unsupported op {op!r}; capabilities: {sorted(providers)}")
    if op == "classify":
        labels, scores = providers[op].classify(str(obj["aspect"]), list(obj["texts"]))
        return {"labels": labels, "scores": scores}
    if op == "similarity":
        pairs = [(str(a), str(b)) for a, b in obj["pairs"]]
        return {"scores": providers[op].similarity(pairs)}
    if op == "embed":
        return {"vectors": providers[op].embed([str(t) for t in obj["texts"]])}
    if op == "ner":
        return {"entities": providers[op].ner([str(t) for t in obj["texts"]])}
    raise ValueError(f"unknown op {op!r}")


def serve(config: AdapterConfig, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr

    loaded = load_providers(config)
    for capability, message in loaded.failures.items():
        print(f"warning: could not load {capability}: {message}", file=stderr)
    if config.require_all and loaded.failures:
        print("fatal: require_all set and a capability failed to load", file=stderr)
        return 1
    if not loaded.providers:
        print("fatal: no capability could be loaded", file=stderr)
        return 1

    def emit(obj: dict) -> None:
        stdout.write(json.dumps(obj) + "\n")
        stdout.flush()

    handshake = {
        "protocol": PROTOCOL_NAME,
        "version": PROTOCOL_VERSION,
        "capabilities": sorted(loaded.providers),
        "name": config.name,
    }
    if loaded.embed_dim is not None:
        handshake["embed_dim"] = loaded.embed_dim
    emit(handshake)

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
            response = handle_request(obj, loaded)
        except Exception as exc:  # per-request isolation
            emit({"id": rid, "error": str(exc)})
            continue
        emit({"id": rid, **response})
    return 0


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) > 1 or argv[:1] in (["-h"], ["--help"]):
        print("usage: argusense-adapter [config.json]", file=sys.stderr)
        return 2 if len(argv) > 1 else 0
    try:
        config = AdapterConfig.load(argv[0]) if argv else AdapterConfig()
    except (OSError, ValueError, TypeError) as exc:
        print(f"fatal: bad adapter config: {exc}", file=sys.stderr)
        return 1
    return serve(config)


if __name__ == "__main__":
    sys.exit(main())
