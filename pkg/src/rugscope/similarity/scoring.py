"""Jaccard scoring over contract fingerprints, plus the intra-/inter-cluster
aggregation protocols.

Scores are exact rationals internally; they become floats only at the
reporting boundary. The empty-vs-empty convention is 1.0 (two fully
stripped, library-only contracts count as clones); empty against
non-empty is 0.0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from ..errors import InsufficientContracts, ParseFailure
from ..ledger import DatasetSnapshot
from .fingerprint import ContractFingerprint, fingerprint


def jaccard(a: ContractFingerprint, b: ContractFingerprint) -> Fraction:
    """|A n B| / |A u B|, exactly."""
    if not a.hashes and not b.hashes:
        return Fraction(1)
    union = len(a.hashes | b.hashes)
    if union == 0:
        return Fraction(1)
    return Fraction(len(a.hashes & b.hashes), union)


def jaccard_distance(a: ContractFingerprint, b: ContractFingerprint) -> Fraction:
    return Fraction(1) - jaccard(a, b)


def intra_cluster_similarity(fingerprints: Sequence[ContractFingerprint]) -> Fraction:
    """Mean pairwise score over all unordered pairs."""
    n = len(fingerprints)
    if n < 2:
        raise InsufficientContracts(f"need >= 2 usable contracts, got {n}")
    total = Fraction(0)
    pairs = 0
    for i in range(n):
        for j in range(i + 1, n):
            total += jaccard(fingerprints[i], fingerprints[j])
            pairs += 1
    return total / pairs


@dataclass(frozen=True, slots=True)
class SamplePlan:
    max_tokens_per_cluster: int = 100
    partner_clusters: int = 500
    repeats: int = 10
    seed: int = 7


def inter_cluster_similarity(
    cluster_fingerprints: Mapping[int, Sequence[ContractFingerprint]],
    plan: SamplePlan = SamplePlan(),
) -> dict[int, Fraction]:
    """Per-cluster average cross-cluster score.

    Per repeat: sample up to max_tokens_per_cluster of the cluster's own
    fingerprints, up to partner_clusters other clusters (with their own
    token samples), average all cross pairs; then average over repeats.
    Deterministic under the plan's seed. When the samples cover the whole
    population the result equals the exhaustive cross-average.
    """
    eligible = {
        cid: list(fps) for cid, fps in sorted(cluster_fingerprints.items()) if fps
    }
    if len(eligible) < 2:
        raise InsufficientContracts("need >= 2 clusters with usable contracts")

    rng = random.Random(plan.seed)
    results: dict[int, Fraction] = {}
    for cid, own in eligible.items():
        partners_all = [other for other in eligible if other != cid]
        repeat_scores: list[Fraction] = []
        for _ in range(plan.repeats):
            own_sample = _sample(rng, own, plan.max_tokens_per_cluster)
            partner_ids = _sample(rng, partners_all, plan.partner_clusters)
            total = Fraction(0)
            pairs = 0
            for pid in partner_ids:
                partner_sample = _sample(rng, eligible[pid], plan.max_tokens_per_cluster)
                for fp_a in own_sample:
                    for fp_b in partner_sample:
                        total += jaccard(fp_a, fp_b)
                        pairs += 1
            if pairs:
                repeat_scores.append(total / pairs)
        if repeat_scores:
            results[cid] = sum(repeat_scores, Fraction(0)) / len(repeat_scores)
    return results


def _sample(rng: random.Random, population: list, k: int) -> list:
    if len(population) <= k:
        return list(population)
    return rng.sample(population, k)


@dataclass
class FingerprintIndex:
    """Fingerprints per cluster, with skip accounting for unusable sources."""

    by_cluster: dict[int, list[ContractFingerprint]]
    by_token: dict[str, ContractFingerprint]
    unverified: int = 0
    parse_failures: int = 0


def build_fingerprint_index(
    cluster_pools: Mapping[int, Iterable[str]],
    scam_tokens: Mapping[str, str],
    snapshot: DatasetSnapshot,
    corpus: Optional[frozenset[str]] = None,
) -> FingerprintIndex:
    """Fingerprint every verified scam-token contract, grouped by cluster.

    cluster_pools maps cluster id -> pool addresses; scam_tokens maps pool
    address -> token address. Unverified or unparseable contracts are
    counted and skipped, never fatal.
    """
    index = FingerprintIndex(by_cluster={}, by_token={})
    for cid, pools in sorted(cluster_pools.items()):
        bucket: list[ContractFingerprint] = []
        for pool in sorted(pools):
            token = scam_tokens.get(pool)
            contract = snapshot.contracts.get(token) if token else None
            if contract is None or not contract.verified or not contract.source_code:
                index.unverified += 1
                continue
            cached = index.by_token.get(token)
            if cached is None:
                try:
                    cached = fingerprint(contract.source_code, corpus)
                except ParseFailure:
                    index.parse_failures += 1
                    continue
                index.by_token[token] = cached
            bucket.append(cached)
        if bucket:
            index.by_cluster[cid] = bucket
    return index
