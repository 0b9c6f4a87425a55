"""Model-backed adapter process for the argusense pipeline.

Speaks newline-delimited JSON on stdin/stdout: one handshake line, then
one response per request, matched by id.  Capabilities (classify,
similarity, embed, ner) are served by pretrained models configured in a
JSON file, or by deterministic fake models for testing.
"""

__version__ = "0.1.0"

PROTOCOL_NAME = "argusense-adapter"
PROTOCOL_VERSION = 1
