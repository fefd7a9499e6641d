"""Naive and cluster-aware scam profit accounting, all in exact wei.

The naive formula sees only a pool's role addresses; the cluster-aware
formula charges every cluster member's pool-side payments (wash swap-ins
included) as cost and credits their payouts, then subtracts intra-cluster
transfer fees at the cluster level.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .clusters import ClusterSet, ScamCluster
from .errors import PoolNotInCluster
from .ledger import DatasetSnapshot, EventKind
from .rugpull import ScamPoolRecord, ScanResult


@dataclass(frozen=True, slots=True)
class PoolProfitReport:
    pool: str
    x_naive: int
    y_naive: int
    delta_naive: int
    x_cluster: Optional[int] = None
    y_cluster: Optional[int] = None
    z_wash: Optional[int] = None
    delta_cluster: Optional[int] = None

    @property
    def has_wash_trading(self) -> bool:
        return bool(self.z_wash)


@dataclass(frozen=True, slots=True)
class ClusterProfitReport:
    cluster_id: int
    total_naive: int
    total_cluster: int
    transfer_fees: int  # T(C): fees of member-to-member native transfers
    pool_count: int
    has_wash_trading: bool


def _pool_flows(
    record: ScamPoolRecord,
    snapshot: DatasetSnapshot,
    addresses: frozenset[str],
) -> tuple[int, int, int]:
    """(paid_in + fees, gained − fees, wash_swap_in_values) for the given
    address set. Gas is attributed once per transaction, to the side of the
    first event seen for it."""
    x = y = 0
    wash_in = 0
    roles = record.roles()
    counted_tx: set[str] = set()
    for event in snapshot.pool_events_of(record.pool):
        if event.actor not in addresses:
            continue
        gas = 0
        if event.tx_hash not in counted_tx:
            counted_tx.add(event.tx_hash)
            gas = snapshot.gas_fee_of_tx(event.tx_hash)
        if event.kind is EventKind.MINT:
            x += event.amount_native + gas
        elif event.kind is EventKind.BURN:
            y += event.amount_native - gas
        elif event.kind is EventKind.SWAP:
            if event.amount_native > 0:
                x += event.amount_native + gas
                if event.actor not in roles:
                    wash_in += event.amount_native
            elif event.amount_native < 0:
                y += -event.amount_native - gas
            else:
                x += gas
        else:  # lp_transfer moves no native value; charge its gas as cost
            x += gas
    return x, y, wash_in


def naive_profit(record: ScamPoolRecord, snapshot: DatasetSnapshot) -> PoolProfitReport:
    """Def.-5 profit: the role addresses' pool legs plus their fees."""
    x, y, _ = _pool_flows(record, snapshot, record.roles())
    return PoolProfitReport(
        pool=record.pool,
        x_naive=x,
        y_naive=y,
        delta_naive=y - x,
    )


def cluster_aware_profit(
    record: ScamPoolRecord,
    cluster: ScamCluster,
    snapshot: DatasetSnapshot,
    scammers: Optional[frozenset[str]] = None,
) -> PoolProfitReport:
    """Def.-6 per-pool profit, with every cluster member's legs counted.

    Raises PoolNotInCluster when the pool's scammer roles are not all
    members of the supplied cluster.
    """
    return member_aware_profit(record, cluster.members, snapshot, scammers)


def member_aware_profit(
    record: ScamPoolRecord,
    members: frozenset[str],
    snapshot: DatasetSnapshot,
    scammers: Optional[frozenset[str]] = None,
) -> PoolProfitReport:
    """Cluster-aware accounting against an explicit member set (used by the
    network generalization, where members need not be scammers)."""
    active_roles = record.roles() if scammers is None else record.roles() & scammers
    if not active_roles <= members:
        raise PoolNotInCluster(
            f"pool {record.pool} roles {sorted(active_roles)} not within member set"
        )
    x_naive, y_naive, _ = _pool_flows(record, snapshot, record.roles())
    x_cluster, y_cluster, wash_in = _pool_flows(record, snapshot, frozenset(members))
    return PoolProfitReport(
        pool=record.pool,
        x_naive=x_naive,
        y_naive=y_naive,
        delta_naive=y_naive - x_naive,
        x_cluster=x_cluster,
        y_cluster=y_cluster,
        z_wash=wash_in,
        delta_cluster=y_cluster - x_cluster,
    )


def intra_member_transfer_fees(members: frozenset[str], snapshot: DatasetSnapshot) -> int:
    """T(C): total gas of direct native transfers between member addresses."""
    total = 0
    for addr in members:
        for t in snapshot.transfers_of(addr, "out"):
            if t.receiver in members and t.receiver != t.sender:
                total += t.gas_fee
    return total


def cluster_total_profit(
    cluster: ScamCluster,
    scan_result: ScanResult,
    snapshot: DatasetSnapshot,
    reports: Optional[dict[str, PoolProfitReport]] = None,
) -> ClusterProfitReport:
    """Sum of the cluster's per-pool cluster-aware profits minus T(C)."""
    by_pool = scan_result.by_pool
    total_naive = 0
    total_cluster = 0
    wash = False
    for pool in cluster.pools:
        report = reports.get(pool) if reports else None
        if report is None or report.delta_cluster is None:
            report = cluster_aware_profit(by_pool[pool], cluster, snapshot,
                                          scan_result.scammers)
        total_naive += report.delta_naive
        total_cluster += report.delta_cluster
        wash = wash or report.has_wash_trading
    fees = intra_member_transfer_fees(cluster.members, snapshot)
    return ClusterProfitReport(
        cluster_id=cluster.id,
        total_naive=total_naive,
        total_cluster=total_cluster - fees,
        transfer_fees=fees,
        pool_count=len(cluster.pools),
        has_wash_trading=wash,
    )


@dataclass
class InflationSummary:
    pool_count: int
    cluster_count: int
    avg_pool_naive_wei: float
    avg_pool_cluster_wei: float
    avg_cluster_naive_wei: float
    avg_cluster_cluster_wei: float
    pool_inflation_pct: Optional[float]
    cluster_inflation_pct: Optional[float]
    wash_cluster_share_pct: float
    wash_cluster_count: int

    def to_dict(self) -> dict:
        return {
            "pools": self.pool_count,
            "clusters": self.cluster_count,
            "avg_pool_profit_naive_eth": self.avg_pool_naive_wei / 10**18,
            "avg_pool_profit_cluster_eth": self.avg_pool_cluster_wei / 10**18,
            "avg_cluster_profit_naive_eth": self.avg_cluster_naive_wei / 10**18,
            "avg_cluster_profit_cluster_eth": self.avg_cluster_cluster_wei / 10**18,
            "pool_inflation_pct": self.pool_inflation_pct,
            "cluster_inflation_pct": self.cluster_inflation_pct,
            "wash_cluster_share_pct": self.wash_cluster_share_pct,
            "wash_cluster_count": self.wash_cluster_count,
        }


def inflation_summary(
    pool_reports: Sequence[PoolProfitReport],
    cluster_reports: Sequence[ClusterProfitReport],
) -> InflationSummary:
    """How much the naive formula inflates profits versus cluster-aware."""
    pools = [r for r in pool_reports if r.delta_cluster is not None]
    n_pools = len(pools)
    n_clusters = len(cluster_reports)

    avg_pool_naive = sum(r.delta_naive for r in pools) / n_pools if n_pools else 0.0
    avg_pool_cluster = sum(r.delta_cluster for r in pools) / n_pools if n_pools else 0.0
    avg_cl_naive = (sum(r.total_naive for r in cluster_reports) / n_clusters
                    if n_clusters else 0.0)
    avg_cl_cluster = (sum(r.total_cluster for r in cluster_reports) / n_clusters
                      if n_clusters else 0.0)

    def inflation(naive: float, aware: float) -> Optional[float]:
        if aware == 0:
            return None
        return (naive - aware) / abs(aware) * 100.0

    wash_clusters = sum(1 for r in cluster_reports if r.has_wash_trading)
    return InflationSummary(
        pool_count=n_pools,
        cluster_count=n_clusters,
        avg_pool_naive_wei=avg_pool_naive,
        avg_pool_cluster_wei=avg_pool_cluster,
        avg_cluster_naive_wei=avg_cl_naive,
        avg_cluster_cluster_wei=avg_cl_cluster,
        pool_inflation_pct=inflation(avg_pool_naive, avg_pool_cluster),
        cluster_inflation_pct=inflation(avg_cl_naive, avg_cl_cluster),
        wash_cluster_share_pct=(wash_clusters / n_clusters * 100.0) if n_clusters else 0.0,
        wash_cluster_count=wash_clusters,
    )
