"""Scam clusters: connected components over scammer addresses linked by
direct native transfers or co-association with one scam pool.

Transfers of any timing qualify (the definition is timing-free), dust
included unless a value floor is configured. Co-pool association connects
every pair of a pool's scammer roles, not just pairs through the creator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .ledger import DatasetSnapshot
from .patterns.chains import ChainResult
from .patterns.flows import MajorFlowResult
from .patterns.stars import StarResult
from .rugpull import ScanResult


class UnionFind:
    """Array-free union-find with path compression and union by size."""

    def __init__(self):
        self._parent: dict[str, str] = {}
        self._size: dict[str, int] = {}

    def add(self, x: str) -> None:
        if x not in self._parent:
            self._parent[x] = x
            self._size[x] = 1

    def find(self, x: str) -> str:
        root = x
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[x] != root:
            self._parent[x], x = root, self._parent[x]
        return root

    def union(self, a: str, b: str) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]

    def groups(self) -> dict[str, set[str]]:
        out: dict[str, set[str]] = {}
        for x in self._parent:
            out.setdefault(self.find(x), set()).add(x)
        return out


@dataclass(frozen=True, slots=True)
class ScamCluster:
    id: int
    members: frozenset[str]
    edges: frozenset[tuple[str, str, str]]  # (low, high, "transfer" | "co_pool")
    pools: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class ClusterSet:
    clusters: list[ScamCluster]
    singletons: tuple[str, ...]
    _membership: dict[str, int] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._membership:
            for cluster in self.clusters:
                for member in cluster.members:
                    self._membership[member] = cluster.id

    def cluster_of(self, addr: str) -> Optional[int]:
        return self._membership.get(addr)

    def by_id(self, cluster_id: int) -> ScamCluster:
        return self.clusters[cluster_id - 1]


def build_clusters(
    scammers: Iterable[str],
    scan_result: ScanResult,
    snapshot: DatasetSnapshot,
    min_value: int = 0,
    min_size: int = 2,
) -> ClusterSet:
    """Maximal clusters (size >= min_size), ids assigned in order of each
    cluster's smallest member address so reruns are stable."""
    scammer_set = set(scammers)
    uf = UnionFind()
    for s in scammer_set:
        uf.add(s)

    edges: set[tuple[str, str, str]] = set()
    for t in snapshot.transfers:
        if t.value <= min_value:
            continue
        if t.sender in scammer_set and t.receiver in scammer_set and t.sender != t.receiver:
            uf.union(t.sender, t.receiver)
            u, v = sorted((t.sender, t.receiver))
            edges.add((u, v, "transfer"))

    pool_members: dict[str, list[str]] = {}
    for record in scan_result.records:
        members = sorted(record.roles() & scammer_set)
        pool_members[record.pool] = members
        for i, u in enumerate(members):
            for v in members[i + 1:]:
                uf.union(u, v)
                edges.add((u, v, "co_pool"))

    groups = sorted(uf.groups().values(), key=min)
    clusters: list[ScamCluster] = []
    singletons: list[str] = []
    next_id = 1
    for group in groups:
        if len(group) < min_size:
            singletons.extend(group)
            continue
        group_edges = frozenset(
            e for e in edges if e[0] in group and e[1] in group
        )
        pools = tuple(sorted(
            pool for pool, members in pool_members.items()
            if members and set(members) <= group
        ))
        clusters.append(ScamCluster(
            id=next_id,
            members=frozenset(group),
            edges=group_edges,
            pools=pools,
        ))
        next_id += 1
    return ClusterSet(clusters=clusters, singletons=tuple(sorted(singletons)))


@dataclass(frozen=True, slots=True)
class PatternCensus:
    stars: int
    chains: int
    flows: int

    @property
    def total(self) -> int:
        return self.stars + self.chains + self.flows


def cluster_pattern_census(
    cluster_set: ClusterSet,
    stars: list[StarResult],
    chains: list[ChainResult],
    flows: list[MajorFlowResult],
) -> dict[int, PatternCensus]:
    """Patterns wholly inside each cluster.

    Star membership includes the center only when it is a scammer; a star
    around a non-scammer coordinator has no cluster edges of its own and
    is counted only if all satellites still share one cluster.
    """
    def home(addresses: Iterable[str]) -> Optional[int]:
        ids = {cluster_set.cluster_of(a) for a in addresses}
        if len(ids) == 1:
            only = ids.pop()
            return only
        return None

    counts: dict[int, dict[str, int]] = {}

    def bump(cluster_id: Optional[int], kind: str) -> None:
        if cluster_id is None:
            return
        counts.setdefault(cluster_id, {"stars": 0, "chains": 0, "flows": 0})[kind] += 1

    for star in stars:
        members = set(star.satellites)
        if star.center_is_scammer:
            members.add(star.center)
        bump(home(members), "stars")
    for chain in chains:
        bump(home(chain.members), "chains")
    for flow in flows:
        bump(home(flow.vertices), "flows")

    return {
        cid: PatternCensus(c["stars"], c["chains"], c["flows"])
        for cid, c in sorted(counts.items())
    }
