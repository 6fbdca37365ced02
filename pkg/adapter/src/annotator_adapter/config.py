from __future__ import annotations

from dataclasses import dataclass


@dataclass
class AdapterConfig:
    """Runtime knobs; chunking must keep max_chunk > overlap so the scan
    advances, and the overlap should exceed the longest entity expected."""

    model_id: str = "ckiplab/bert-base-chinese-ner"
    device: str = "cpu"
    max_chunk: int = 450
    overlap: int = 50
    host: str = "127.0.0.1"
    port: int = 8601

    def __post_init__(self) -> None:
        if self.max_chunk <= 0:
            raise ValueError("max_chunk must be positive")
        if not (0 <= self.overlap < self.max_chunk):
            raise ValueError("overlap must satisfy 0 <= overlap < max_chunk")
