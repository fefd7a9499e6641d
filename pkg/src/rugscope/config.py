"""Pipeline configuration: every tunable constant in one place, echoed into
output-file headers for provenance."""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Union

from .ingest.datasets import (
    CONTRACTS_FILE,
    EVENTS_FILE,
    MANIFEST_FILE,
    POOLS_FILE,
    TRANSFERS_FILE,
)


@dataclass
class PipelineConfig:
    dataset: str = ""
    out_dir: str = "rugscope-out"
    p: float = 0.9
    star_min: int = 5
    burn_pct: int = 99
    day_seconds: int = 86_400
    cluster_min_value: int = 0
    cluster_min_size: int = 2
    include_own_swaps: bool = False
    dust_ceiling: int = 10**13
    soft_tx_limit: int = 500
    hard_tx_limit: int = 1000
    build_networks: bool = False
    max_network_nodes: Optional[int] = 200
    similarity_seed: int = 7
    similarity_repeats: int = 10
    similarity_max_tokens: int = 100
    similarity_partner_clusters: int = 500
    exclusions_file: Optional[str] = None
    public_labels_file: Optional[str] = None

    def to_dict(self) -> dict:
        return asdict(self)

    def config_hash(self) -> str:
        canonical = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode()).hexdigest()[:16]

    @classmethod
    def from_file(cls, path: Union[str, Path], **overrides) -> "PipelineConfig":
        text = Path(path).read_text(encoding="utf-8")
        if str(path).endswith(".json"):
            raw = json.loads(text)
        else:
            try:
                import tomllib
            except ModuleNotFoundError:
                import tomli as tomllib
            raw = tomllib.loads(text)
        known = set(cls.__dataclass_fields__)
        unknown = set(raw) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        raw.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**raw)

    def with_overrides(self, **overrides) -> "PipelineConfig":
        data = self.to_dict()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return PipelineConfig(**data)


def dataset_hash(path: Union[str, Path]) -> str:
    """Digest of the dataset directory's canonical files."""
    digest = hashlib.sha256()
    directory = Path(path)
    for name in (MANIFEST_FILE, TRANSFERS_FILE, EVENTS_FILE, POOLS_FILE,
                 CONTRACTS_FILE):
        target = directory / name
        digest.update(name.encode())
        if target.exists():
            digest.update(target.read_bytes())
    return digest.hexdigest()[:16]
