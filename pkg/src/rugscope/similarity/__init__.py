"""Contract-clone scoring: AST node-type streams hashed with Keccak-256,
compared by Jaccard index, robust to comments, renaming, and reordering."""

from .corpus import DEFAULT_CORPUS_SOURCES, build_corpus, default_corpus, strip_common
from .fingerprint import SEPARATOR, ContractFingerprint, fingerprint, hash_stream
from .keccak import keccak256, keccak256_hex
from .scoring import (
    FingerprintIndex,
    SamplePlan,
    build_fingerprint_index,
    inter_cluster_similarity,
    intra_cluster_similarity,
    jaccard,
    jaccard_distance,
)
from .solidity import (
    TOKEN_ENUM_VERSION,
    ComponentKind,
    ComponentTokenStream,
    normalize_source,
    parse_units,
    tokenize,
)

__all__ = [
    "ComponentKind",
    "ComponentTokenStream",
    "ContractFingerprint",
    "DEFAULT_CORPUS_SOURCES",
    "FingerprintIndex",
    "SEPARATOR",
    "SamplePlan",
    "TOKEN_ENUM_VERSION",
    "build_corpus",
    "build_fingerprint_index",
    "default_corpus",
    "fingerprint",
    "hash_stream",
    "inter_cluster_similarity",
    "intra_cluster_similarity",
    "jaccard",
    "jaccard_distance",
    "keccak256",
    "keccak256_hex",
    "normalize_source",
    "parse_units",
    "strip_common",
    "tokenize",
]
