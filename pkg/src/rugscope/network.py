"""Scam-network reconstruction: role labelling, address-poisoning filtering,
and terminal-node-bounded BFS from cluster seeds.

The BFS expands over non-zero native transfers (either direction) and
co-scam-pool association, never through poisoning-flagged edges. Public
service addresses and normal-trading boundary addresses join the network
but stop expansion; big nodes above the hard transaction limit never join
at all, and ones between the soft and hard limits join only when they are
scammers or coordinators.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Union

from .clusters import ScamCluster
from .ledger import DatasetSnapshot, EventKind, NativeTransfer, funding_order_key
from .profit import PoolProfitReport, intra_member_transfer_fees, member_aware_profit
from .rugpull import ScanResult


class NodeRole(str, Enum):
    SCAMMER = "scammer"
    COORDINATOR = "coordinator"
    WASH_TRADER = "wash_trader"
    DEPOSITOR = "depositor"
    WITHDRAWER = "withdrawer"
    TRANSFERRER = "transferrer"
    BOUNDARY = "boundary"
    UNLABELLED = "unlabelled"


class StopReason(str, Enum):
    PUBLIC_TERMINAL = "public_terminal"
    BOUNDARY = "boundary"
    BIG_NODE = "big_node"
    NODE_BUDGET = "node_budget"


@dataclass
class TerminalPolicy:
    """BFS stopping rules; soft/hard transaction limits follow the paper's
    500/1000 defaults."""

    public_labels: dict[str, str] = field(default_factory=dict)
    min_swap_ins: int = 10
    soft_tx_limit: int = 500   # above this only scammers/coordinators pass
    hard_tx_limit: int = 1000  # above this nobody passes
    dust_ceiling: int = 10**13
    token_transfer_edges: bool = False  # reserved; token legs are not edges

    def __post_init__(self):
        if self.soft_tx_limit >= self.hard_tx_limit:
            raise ValueError("soft_tx_limit must be below hard_tx_limit")
        self.public_labels = {k.lower(): v for k, v in self.public_labels.items()}

    def is_public(self, addr: str) -> bool:
        return addr in self.public_labels

    @classmethod
    def from_file(cls, path: Union[str, Path], **overrides) -> "TerminalPolicy":
        """Public-label file: one address per line, optional label column."""
        labels = {}
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(None, 1)
            labels[parts[0].lower()] = parts[1] if len(parts) > 1 else "public"
        return cls(public_labels=labels, **overrides)


@dataclass(frozen=True, slots=True)
class NodeLabel:
    address: str
    roles: frozenset[NodeRole]
    evidence: tuple[str, ...]


@dataclass
class ScamNetwork:
    seed_id: Optional[int]
    nodes: tuple[str, ...]           # discovery order
    labels: dict[str, NodeLabel]
    edges: frozenset[tuple[str, str]]  # directed transfer edges inside the network
    truncation_log: tuple[tuple[str, str], ...]
    budget_exceeded: bool = False

    @property
    def node_set(self) -> frozenset[str]:
        return frozenset(self.nodes)

    def by_role(self, role: NodeRole) -> frozenset[str]:
        return frozenset(a for a, l in self.labels.items() if role in l.roles)


def detect_poisoning(
    addr: str,
    snapshot: DatasetSnapshot,
    dust_ceiling: int = 10**13,
) -> set[NativeTransfer]:
    """In-transfers of ``addr`` that look like address poisoning.

    Flags zero-value message transactions, and dust at or below the
    ceiling whose sender shares the first and last four hex digits with
    one of addr's out-neighbors while being a different address.
    """
    flagged: set[NativeTransfer] = set()
    out_neighbors = {t.receiver for t in snapshot.transfers_of(addr, "out")}
    mimic_keys = {(n[2:6], n[-4:]): n for n in out_neighbors}
    for t in snapshot.transfers_of(addr, "in"):
        if t.value == 0:
            flagged.add(t)
            continue
        if t.value <= dust_ceiling:
            key = (t.sender[2:6], t.sender[-4:])
            twin = mimic_keys.get(key)
            if twin is not None and twin != t.sender:
                flagged.add(t)
    return flagged


@dataclass
class LabelContext:
    """Precomputed facts shared by every label decision in one run."""

    snapshot: DatasetSnapshot
    scan_result: ScanResult
    policy: TerminalPolicy
    largest_funder_of: dict[str, str]
    funder_tally: dict[str, int]
    coordinators: frozenset[str]

    @classmethod
    def build(
        cls,
        snapshot: DatasetSnapshot,
        scan_result: ScanResult,
        policy: TerminalPolicy,
    ) -> "LabelContext":
        largest: dict[str, str] = {}
        tally: dict[str, int] = {}
        for s in scan_result.windows:
            rows = snapshot.transfers_of(s, "in")
            rows = [t for t in rows if t.value > 0]
            if not rows:
                continue
            top = min(rows, key=funding_order_key)
            largest[s] = top.sender
            tally[top.sender] = tally.get(top.sender, 0) + 1

        coordinators = set()
        for candidate, count in tally.items():
            if count < 5:
                continue
            neighbors = [
                n for n in snapshot.neighbors(candidate)
                if not snapshot.is_contract(n)
            ]
            if not neighbors:
                continue
            scammer_share = sum(1 for n in neighbors if n in scan_result.windows)
            if 2 * scammer_share >= len(neighbors):
                coordinators.add(candidate)
        return cls(
            snapshot=snapshot,
            scan_result=scan_result,
            policy=policy,
            largest_funder_of=largest,
            funder_tally=tally,
            coordinators=frozenset(coordinators),
        )

    def swap_in_census(self, addr: str) -> tuple[int, int]:
        """(total swap-ins, swap-ins on scam pools) for one address."""
        total = scam = 0
        scam_pools = set(self.scan_result.by_pool)
        for event in self.snapshot.events_by_actor(addr):
            if event.kind is EventKind.SWAP and event.amount_native > 0:
                total += 1
                if event.pool in scam_pools:
                    scam += 1
        return total, scam

    def is_boundary(self, addr: str) -> bool:
        if addr in self.scan_result.windows or addr in self.coordinators:
            return False
        total, scam = self.swap_in_census(addr)
        if total < self.policy.min_swap_ins:
            return False
        return 2 * (total - scam) > total


def label_node(
    addr: str,
    ctx: LabelContext,
    network_nodes: Optional[frozenset[str]] = None,
    wash_reachable: Optional[frozenset[str]] = None,
    network_scam_pools: Optional[frozenset[str]] = None,
) -> NodeLabel:
    """All satisfied roles for one address (dual roles are kept).

    Wash-trader evaluation needs the finished network (reachability and
    its pool set); standalone calls simply skip that rule.
    """
    snapshot, scan_result, policy = ctx.snapshot, ctx.scan_result, ctx.policy
    roles: set[NodeRole] = set()
    evidence: list[str] = []

    if addr in scan_result.windows:
        roles.add(NodeRole.SCAMMER)
        evidence.append("role_in_scam_pool")
    if addr in ctx.coordinators:
        roles.add(NodeRole.COORDINATOR)
        evidence.append(f"largest_funder_of_{ctx.funder_tally.get(addr, 0)}_scammers")

    if wash_reachable is not None and network_scam_pools is not None:
        if addr in wash_reachable:
            swapped = any(
                e.kind is EventKind.SWAP and e.amount_native > 0
                and e.pool in network_scam_pools
                for e in snapshot.events_by_actor(addr)
            )
            if swapped:
                roles.add(NodeRole.WASH_TRADER)
                evidence.append("swap_in_on_network_scam_pool")

    ins = snapshot.transfers_of(addr, "in")
    outs = snapshot.transfers_of(addr, "out")
    if any(policy.is_public(t.receiver) for t in outs):
        roles.add(NodeRole.DEPOSITOR)
        evidence.append("sent_to_public_service")
    if any(policy.is_public(t.sender) for t in ins):
        roles.add(NodeRole.WITHDRAWER)
        evidence.append("received_from_public_service")

    counterparties = snapshot.neighbors(addr)
    only_eoa = counterparties and all(
        not snapshot.is_contract(n) for n in counterparties
    )
    if only_eoa and not snapshot.events_by_actor(addr):
        in_total = sum(t.value for t in ins)
        out_total = sum(t.value for t in outs)
        fees = sum(t.gas_fee for t in outs)
        if in_total > 0 and 100 * (out_total + fees) >= 99 * in_total:
            roles.add(NodeRole.TRANSFERRER)
            evidence.append("forwarded_99pct_of_inflow")

    if ctx.is_boundary(addr):
        roles.add(NodeRole.BOUNDARY)
        evidence.append("mostly_non_scam_swap_ins")

    if not roles:
        roles.add(NodeRole.UNLABELLED)
    return NodeLabel(address=addr, roles=frozenset(roles),
                     evidence=tuple(evidence))


def _valid_neighbors(
    addr: str,
    snapshot: DatasetSnapshot,
    scan_result: ScanResult,
    dust_ceiling: int,
) -> tuple[set[str], set[tuple[str, str]]]:
    """(neighbor addresses, directed edges) reachable from one node:
    non-zero unflagged transfers plus co-scam-pool association."""
    flagged = detect_poisoning(addr, snapshot, dust_ceiling)
    neighbors: set[str] = set()
    edges: set[tuple[str, str]] = set()
    for t in snapshot.transfers_of(addr, "in"):
        if t.value > 0 and t not in flagged and t.sender != addr:
            neighbors.add(t.sender)
            edges.add((t.sender, addr))
    for t in snapshot.transfers_of(addr, "out"):
        if t.value > 0 and t.receiver != addr:
            neighbors.add(t.receiver)
            edges.add((addr, t.receiver))
    window = scan_result.windows.get(addr)
    if window:
        for pool in window.pools:
            for role in scan_result.by_pool[pool].roles():
                if role != addr and role in scan_result.scammers:
                    neighbors.add(role)
    return neighbors, edges


def expand_network(
    seed: Union[ScamCluster, Iterable[str]],
    snapshot: DatasetSnapshot,
    scan_result: ScanResult,
    policy: TerminalPolicy,
    max_nodes: Optional[int] = None,
) -> ScamNetwork:
    """Deterministic bounded BFS from a seed cluster (or address list)."""
    if isinstance(seed, ScamCluster):
        seed_members = sorted(seed.members)
        seed_id = seed.id
    else:
        seed_members = sorted(seed)
        seed_id = None

    ctx = LabelContext.build(snapshot, scan_result, policy)
    visited: dict[str, None] = {}
    truncation: list[tuple[str, str]] = []
    edges: set[tuple[str, str]] = set()
    dropped: set[str] = set()
    budget_exceeded = False

    queue = deque()
    for member in seed_members:
        visited[member] = None
        queue.append(member)

    while queue:
        node = queue.popleft()
        if policy.is_public(node):
            truncation.append((node, StopReason.PUBLIC_TERMINAL.value))
            continue
        if ctx.is_boundary(node):
            truncation.append((node, StopReason.BOUNDARY.value))
            continue
        neighbors, node_edges = _valid_neighbors(
            node, snapshot, scan_result, policy.dust_ceiling
        )
        edges.update(node_edges)
        for neighbor in sorted(neighbors):
            if neighbor in visited or neighbor in dropped:
                continue
            tx_count = snapshot.tx_count(neighbor)
            if tx_count > policy.hard_tx_limit:
                dropped.add(neighbor)
                truncation.append((neighbor, StopReason.BIG_NODE.value))
                continue
            if tx_count > policy.soft_tx_limit:
                if neighbor not in scan_result.windows and neighbor not in ctx.coordinators:
                    dropped.add(neighbor)
                    truncation.append((neighbor, StopReason.BIG_NODE.value))
                    continue
            if max_nodes is not None and len(visited) >= max_nodes:
                budget_exceeded = True
                truncation.append((neighbor, StopReason.NODE_BUDGET.value))
                continue
            visited[neighbor] = None
            queue.append(neighbor)

    node_set = frozenset(visited)
    inside_edges = frozenset(
        (u, v) for u, v in edges if u in node_set and v in node_set
    )

    # wash-trader rule: reachable from a scammer through in-network
    # transfers, direction ignored
    adjacency: dict[str, set[str]] = {}
    for u, v in inside_edges:
        adjacency.setdefault(u, set()).add(v)
        adjacency.setdefault(v, set()).add(u)
    reach: set[str] = set()
    frontier = deque(sorted(n for n in node_set if n in scan_result.windows))
    reach.update(frontier)
    while frontier:
        node = frontier.popleft()
        for other in adjacency.get(node, ()):
            if other not in reach:
                reach.add(other)
                frontier.append(other)

    network_pools = frozenset(
        pool for pool, record in scan_result.by_pool.items()
        if record.roles() & node_set
    )
    labels = {
        node: label_node(node, ctx, node_set, frozenset(reach), network_pools)
        for node in visited
    }

    return ScamNetwork(
        seed_id=seed_id,
        nodes=tuple(visited),
        labels=labels,
        edges=inside_edges,
        truncation_log=tuple(truncation),
        budget_exceeded=budget_exceeded,
    )


def network_aware_profit(
    network: ScamNetwork,
    scan_result: ScanResult,
    snapshot: DatasetSnapshot,
) -> tuple[list[PoolProfitReport], int]:
    """Cluster-aware accounting with the network's node set as the member
    set; returns per-pool reports and the intra-network transfer fees."""
    members = network.node_set
    reports: list[PoolProfitReport] = []
    for pool in sorted(scan_result.by_pool):
        record = scan_result.by_pool[pool]
        active = record.roles() & scan_result.scammers
        if not active or not active <= members:
            continue
        reports.append(member_aware_profit(record, members, snapshot,
                                           scan_result.scammers))
    return reports, intra_member_transfer_fees(members, snapshot)


_ROLE_COLORS = {
    NodeRole.SCAMMER: "red",
    NodeRole.WASH_TRADER: "orange",
    NodeRole.TRANSFERRER: "yellow",
    NodeRole.DEPOSITOR: "blue",
    NodeRole.COORDINATOR: "purple",
}


def network_to_dot(network: ScamNetwork, policy: TerminalPolicy) -> str:
    """GraphViz rendering with the appendix color code; public terminals
    are green."""
    lines = ["digraph scam_network {", "  node [style=filled];"]
    for node in network.nodes:
        label = network.labels[node]
        if policy.is_public(node):
            color = "green"
        else:
            color = next(
                (_ROLE_COLORS[r] for r in _ROLE_COLORS if r in label.roles),
                "gray",
            )
        lines.append(f'  "{node[:10]}" [fillcolor={color}];')
    for u, v in sorted(network.edges):
        lines.append(f'  "{u[:10]}" -> "{v[:10]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
