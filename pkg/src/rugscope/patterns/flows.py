"""Major scam-funding flow detection.

A major flow is a directed transfer graph over scammer addresses where
every vertex with incoming edges carries exactly its minimal full-cost
funder set, every vertex with outgoing edges carries exactly its minimal
>=p revenue beneficiary set, and the underlying undirected graph is
connected. Detection runs in three steps:

  1. build funding/beneficiary sets per scammer and prune addresses with
     neither set usable;
  2. find all minimal flows: an edge is usable only when it lies in both
     endpoints' sets and those sets survive a mutual-consistency fixpoint;
     usable edges then force each other through shared sets, and minimal
     flows are the connected groups of that forcing relation;
  3. merge minimal flows that share a vertex (their union is again a
     flow) into the maximal flows.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from ..ledger import DatasetSnapshot, NativeTransfer
from ..rugpull import ScanResult
from .funding import FundingSets, compute_funding_sets


class FlowRole(str, Enum):
    INPUT = "input"        # no incoming flow edges
    INTERNAL = "internal"  # both directions present
    OUTPUT = "output"      # no outgoing flow edges


@dataclass(frozen=True, slots=True)
class MajorFlowResult:
    vertices: frozenset[str]
    edges: tuple[NativeTransfer, ...]
    roles: dict[str, FlowRole]
    width: int      # largest contained minimal flow, by vertex count
    fund_in: int    # external funding into the input addresses
    fund_out: int   # external payout from the output addresses
    minimal_sizes: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def edge_set(self) -> frozenset[NativeTransfer]:
        return frozenset(self.edges)


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        root = x
        while self.parent.setdefault(root, root) != root:
            root = self.parent[root]
        while self.parent[x] != root:  # path compression
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def compute_all_funding_sets(
    scammers: Iterable[str],
    p: Union[float, Fraction],
    snapshot: DatasetSnapshot,
    scan_result: ScanResult,
    include_own_swaps: bool = False,
) -> dict[str, FundingSets]:
    out: dict[str, FundingSets] = {}
    for s in sorted(set(scammers)):
        fs = compute_funding_sets(s, p, snapshot, scan_result, include_own_swaps)
        if fs is not None:
            out[s] = fs
    return out


def _usable_sides(
    funding: Mapping[str, FundingSets],
    scammers: set[str],
) -> tuple[dict[str, frozenset[NativeTransfer]], dict[str, frozenset[NativeTransfer]]]:
    """Sides that survive the mutual-consistency fixpoint.

    A vertex keeps its in-side only if every T_F edge also sits in its
    sender's T_B and that sender keeps its out-side; symmetrically for the
    out-side. Anything else can never appear in a valid flow.
    """
    tf = {
        s: frozenset(fs.t_f)
        for s, fs in funding.items()
        if fs.t_f and fs.funders <= scammers
    }
    tb = {
        s: frozenset(fs.t_b)
        for s, fs in funding.items()
        if fs.t_b and fs.beneficiaries <= scammers
    }

    alive_in = {
        s for s, edges in tf.items()
        if all(e.sender in tb and e in tb[e.sender] for e in edges)
    }
    alive_out = {
        s for s, edges in tb.items()
        if all(e.receiver in tf and e in tf[e.receiver] for e in edges)
    }

    changed = True
    while changed:
        changed = False
        for s in list(alive_in):
            if any(e.sender not in alive_out for e in tf[s]):
                alive_in.discard(s)
                changed = True
        for s in list(alive_out):
            if any(e.receiver not in alive_in for e in tb[s]):
                alive_out.discard(s)
                changed = True

    return (
        {s: tf[s] for s in alive_in},
        {s: tb[s] for s in alive_out},
    )


def detect_major_flows(
    scammers: Iterable[str],
    p: Union[float, Fraction],
    snapshot: DatasetSnapshot,
    scan_result: ScanResult,
    include_own_swaps: bool = False,
) -> list[MajorFlowResult]:
    """All maximal major flows over the given scammers, deterministically
    ordered by smallest vertex address."""
    scammer_set = {s for s in scammers if s in scan_result.windows}

    # Step 1: per-address funding sets; drop addresses with no usable side.
    funding = compute_all_funding_sets(
        scammer_set, p, snapshot, scan_result, include_own_swaps
    )
    funding = {
        s: fs for s, fs in funding.items()
        if (fs.t_f is not None and fs.funders <= scammer_set)
        or (fs.t_b is not None and fs.beneficiaries <= scammer_set)
    }

    # Step 2: minimal flows = forcing components over usable edges.
    usable_in, usable_out = _usable_sides(funding, scammer_set)
    groups = _UnionFind()
    for edges in list(usable_in.values()) + list(usable_out.values()):
        ordered = sorted(edges, key=lambda e: (e.tx_hash, e.log_index))
        for other in ordered[1:]:
            groups.union(ordered[0], other)

    components: dict[NativeTransfer, list[NativeTransfer]] = {}
    for edges in usable_in.values():
        for e in edges:
            components.setdefault(groups.find(e), []).append(e)

    minimal_flows = [
        tuple(sorted(set(edges), key=lambda e: (e.tx_hash, e.log_index)))
        for edges in components.values()
    ]

    # Step 3: merge minimal flows sharing a vertex into maximal flows.
    merger = _UnionFind()
    by_vertex: dict[str, int] = {}
    for idx, edges in enumerate(minimal_flows):
        merger.find(idx)
        for e in edges:
            for v in (e.sender, e.receiver):
                if v in by_vertex:
                    merger.union(by_vertex[v], idx)
                else:
                    by_vertex[v] = idx

    merged: dict[int, list[int]] = {}
    for idx in range(len(minimal_flows)):
        merged.setdefault(merger.find(idx), []).append(idx)

    results = [
        _assemble([minimal_flows[i] for i in ids], funding)
        for ids in merged.values()
    ]
    results.sort(key=lambda r: min(r.vertices))
    return results


def _vertices_of(edges: Iterable[NativeTransfer]) -> frozenset[str]:
    out = set()
    for e in edges:
        out.add(e.sender)
        out.add(e.receiver)
    return frozenset(out)


def _assemble(
    parts: list[tuple[NativeTransfer, ...]],
    funding: Mapping[str, FundingSets],
) -> MajorFlowResult:
    edge_set: set[NativeTransfer] = set()
    sizes = []
    for part in parts:
        edge_set.update(part)
        sizes.append(len(_vertices_of(part)))

    vertices = _vertices_of(edge_set)
    incoming = {v: False for v in vertices}
    outgoing = {v: False for v in vertices}
    for e in edge_set:
        outgoing[e.sender] = True
        incoming[e.receiver] = True

    roles = {}
    for v in vertices:
        if incoming[v] and outgoing[v]:
            roles[v] = FlowRole.INTERNAL
        elif incoming[v]:
            roles[v] = FlowRole.OUTPUT
        else:
            roles[v] = FlowRole.INPUT

    fund_in = sum(
        sum(t.value for t in funding[v].t_f)
        for v in vertices
        if roles[v] is FlowRole.INPUT and funding.get(v) and funding[v].t_f
    )
    fund_out = sum(
        sum(t.value for t in funding[v].t_b)
        for v in vertices
        if roles[v] is FlowRole.OUTPUT and funding.get(v) and funding[v].t_b
    )

    return MajorFlowResult(
        vertices=vertices,
        edges=tuple(sorted(edge_set, key=lambda e: (e.tx_hash, e.log_index))),
        roles=roles,
        width=max(sizes),
        fund_in=fund_in,
        fund_out=fund_out,
        minimal_sizes=tuple(sorted(sizes)),
    )
