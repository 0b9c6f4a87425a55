"""Adapter configuration: which capabilities to serve and which model
checkpoint backs each one."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

ALL_CAPABILITIES = ("classify", "similarity", "embed", "ner")

# public checkpoints of the model families the pipeline was designed
# around; overridable per capability in the config file
DEFAULT_MODELS = {
    "classify": "facebook/bart-large-mnli",
    "similarity": "sentence-transformers/all-MiniLM-L6-v2",
    "embed": "sentence-transformers/all-MiniLM-L6-v2",
    "ner": "dslim/bert-base-NER",
}


@dataclass
class AdapterConfig:
    fake: bool = False
    capabilities: list[str] = field(default_factory=lambda: list(ALL_CAPABILITIES))
    models: dict[str, str] = field(default_factory=dict)
    device: str = "cpu"
    batch_size: int = 32
    max_seq_len: int = 256
    embed_dim: int = 384  # used by the fake backend; real models report their own
    require_all: bool = False  # fail instead of dropping an unloadable capability
    name: str = "argusense-ml-adapter"

    def __post_init__(self):
        unknown = [c for c in self.capabilities if c not in ALL_CAPABILITIES]
        if unknown:
            raise ValueError(f"unknown capabilities {unknown}; valid: {ALL_CAPABILITIES}")
        if self.batch_size < 1 or self.max_seq_len < 1 or self.embed_dim < 1:
            raise ValueError("batch_size, max_seq_len and embed_dim must be positive")

    def model_for(self, capability: str) -> str:
        return self.models.get(capability, DEFAULT_MODELS[capability])

    @classmethod
    def load(cls, path: str | Path) -> "AdapterConfig":
        data = json.loads(Path(path).read_text("utf-8"))
        if not isinstance(data, dict):
            raise ValueError("adapter config must be a JSON object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)
