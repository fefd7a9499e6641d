"""Contract fingerprints: one Keccak-256 digest per component token stream."""

from __future__ import annotations

from dataclasses import dataclass, field

from .corpus import default_corpus, strip_common
from .keccak import keccak256
from .solidity import TOKEN_ENUM_VERSION, tokenize

SEPARATOR = b"\x1f"  # joins token names; prevents "AB"+"C" vs "A"+"BC" collisions


@dataclass(frozen=True, slots=True)
class ContractFingerprint:
    """Set of 256-bit component digests; identical components collapse,
    so len(hashes) <= component_count."""

    hashes: frozenset[bytes]
    component_count: int
    token_enum_version: str = TOKEN_ENUM_VERSION

    @property
    def is_empty(self) -> bool:
        return not self.hashes

    def hex_digests(self) -> tuple[str, ...]:
        return tuple(sorted(h.hex() for h in self.hashes))


def hash_stream(token_names: tuple[str, ...]) -> bytes:
    return keccak256(SEPARATOR.join(name.encode("ascii") for name in token_names))


def fingerprint(source: str, corpus: frozenset[str] | None = None) -> ContractFingerprint:
    """Strip common libraries, tokenize, and hash each component.

    Raises ParseFailure for sources outside the supported grammar; callers
    treat those contracts as unusable for similarity and count the skip.
    """
    stripped = strip_common(source, corpus if corpus is not None else default_corpus())
    streams = tokenize(stripped)
    return ContractFingerprint(
        hashes=frozenset(hash_stream(s.tokens) for s in streams),
        component_count=len(streams),
    )


def fingerprint_from_streams(streams) -> ContractFingerprint:
    """Fingerprint externally produced token streams (the AST-provider
    escape hatch: any parser that yields ComponentTokenStream-shaped
    objects can feed this)."""
    materialized = list(streams)
    return ContractFingerprint(
        hashes=frozenset(hash_stream(tuple(s.tokens)) for s in materialized),
        component_count=len(materialized),
    )
