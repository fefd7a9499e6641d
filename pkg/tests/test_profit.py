import random

import pytest

from rugscope.clusters import build_clusters
from rugscope.errors import PoolNotInCluster
from rugscope.profit import (
    cluster_aware_profit,
    cluster_total_profit,
    inflation_summary,
    intra_member_transfer_fees,
    naive_profit,
)
from rugscope.rugpull import scan

from conftest import ETH, LedgerBuilder, addr


def eth(x: float) -> int:
    return round(x * 10**6) * ETH // 10**6


def build_pumpkin():
    """The worked wash-trading fixture: creator adds 1.8, swaps in 0.22,
    removes 9.27; two cluster wash traders swap in 3.56 and 3.54 with
    0.0302 ETH of swap fees between them."""
    b = LedgerBuilder()
    creator, w1, w2 = addr("c6ae"), addr("4b10"), addr("25a1")
    pool = b.scam_pool(creator, "pumpkin", t_mint=10_000, t_burn=12_220,
                       liquidity=eth(1.8), payout=eth(9.27), gas=0)
    b.swap(pool, creator, eth(0.11), 10_100, log_index=1)
    b.swap(pool, creator, eth(0.11), 10_200, log_index=2)
    b.swap(pool, w1, eth(1.78), 10_300, gas=eth(0.0076), log_index=3)
    b.swap(pool, w1, eth(1.78), 10_400, gas=eth(0.0076), log_index=4)
    b.swap(pool, w2, eth(1.77), 10_500, gas=eth(0.0075), log_index=5)
    b.swap(pool, w2, eth(1.77), 10_600, gas=eth(0.0075), log_index=6)
    # wash traders are scammers in the same cluster
    for tag, washer in (("w1", w1), ("w2", w2)):
        b.scam_pool(washer, tag, t_mint=20_000 + len(tag), t_burn=21_000 + len(tag),
                    liquidity=ETH, payout=ETH)
    b.transfer(creator, w1, eth(4.0), ts=9_000)
    b.transfer(w1, w2, eth(3.8), ts=9_100)
    snap = b.snapshot()
    return snap, scan(snap), pool, (creator, w1, w2)


class TestPumpkin:
    def test_naive_profit_matches_worked_example(self):
        snap, result, pool, _ = build_pumpkin()
        report = naive_profit(result.by_pool[pool], snap)
        assert report.x_naive == eth(2.02)
        assert report.y_naive == eth(9.27)
        assert report.delta_naive == eth(7.25)

    def test_cluster_aware_profit_matches_worked_example(self):
        snap, result, pool, _ = build_pumpkin()
        clusters = build_clusters(result.scammers, result, snap)
        assert len(clusters.clusters) == 1
        report = cluster_aware_profit(result.by_pool[pool], clusters.clusters[0],
                                      snap, result.scammers)
        assert report.x_cluster == eth(9.1502)
        assert report.y_cluster == eth(9.27)
        assert report.delta_cluster == eth(0.1198)
        assert report.z_wash == eth(7.10)
        assert report.delta_naive == eth(7.25)

    def test_pool_outside_cluster_rejected(self):
        snap, result, pool, _ = build_pumpkin()
        clusters = build_clusters(result.scammers, result, snap)
        foreign = clusters.clusters[0]
        b2 = LedgerBuilder()
        b2.scam_pool(addr("other"), "other", t_mint=1_000, t_burn=2_000,
                     liquidity=ETH, payout=ETH)
        snap2 = b2.snapshot()
        result2 = scan(snap2)
        with pytest.raises(PoolNotInCluster):
            cluster_aware_profit(result2.records[0], foreign, snap2, result2.scammers)


def single_pool_cluster(gas_mint=0, gas_burn=0, liquidity=5 * ETH, payout=6 * ETH):
    b = LedgerBuilder()
    s1, s2 = addr("s1"), addr("s2")
    pool = b.scam_pool(s1, "p", t_mint=10_000, t_burn=12_000,
                       liquidity=liquidity, payout=payout)
    b.scam_pool(s2, "q", t_mint=20_000, t_burn=21_000, liquidity=ETH, payout=ETH)
    b.transfer(s1, s2, 2 * ETH, ts=30_000)
    return b, pool, (s1, s2)


class TestReductionAndMonotonicity:
    @pytest.mark.parametrize("seed", range(10))
    def test_no_wash_swaps_reduces_to_naive(self, seed):
        rng = random.Random(seed)
        b, pool, _ = single_pool_cluster(
            liquidity=rng.randint(1, 20) * ETH,
            payout=rng.randint(1, 25) * ETH,
        )
        snap = b.snapshot()
        result = scan(snap)
        clusters = build_clusters(result.scammers, result, snap)
        cluster = clusters.clusters[0]
        report = cluster_aware_profit(result.by_pool[pool], cluster, snap,
                                      result.scammers)
        assert report.delta_cluster == report.delta_naive
        assert report.z_wash == 0

    def test_wash_swap_shifts_cluster_delta_only(self):
        w = eth(1.23)
        fee = eth(0.004)
        base_b, pool, (s1, s2) = single_pool_cluster()
        base_snap = base_b.snapshot()
        base_result = scan(base_snap)
        base_clusters = build_clusters(base_result.scammers, base_result, base_snap)
        base = cluster_aware_profit(base_result.by_pool[pool],
                                    base_clusters.clusters[0], base_snap,
                                    base_result.scammers)

        b2, pool2, (s1, s2) = single_pool_cluster()
        b2.swap(pool2, s2, w, 11_000, gas=fee, log_index=7)
        snap2 = b2.snapshot()
        result2 = scan(snap2)
        clusters2 = build_clusters(result2.scammers, result2, snap2)
        shifted = cluster_aware_profit(result2.by_pool[pool2],
                                       clusters2.clusters[0], snap2,
                                       result2.scammers)
        assert shifted.delta_naive == base.delta_naive
        assert shifted.delta_cluster == base.delta_cluster - (w + fee)
        assert shifted.z_wash == w


class TestClusterTotals:
    def test_intra_transfer_fees_reduce_total(self):
        b, pool, (s1, s2) = single_pool_cluster()
        fee = eth(0.001)
        for i in range(3):
            b.transfer(s1, s2, ETH, ts=40_000 + i, gas=fee)
        snap = b.snapshot()
        result = scan(snap)
        clusters = build_clusters(result.scammers, result, snap)
        cluster = clusters.clusters[0]
        assert intra_member_transfer_fees(cluster.members, snap) == 3 * fee
        report = cluster_total_profit(cluster, result, snap)
        per_pool = sum(
            cluster_aware_profit(result.by_pool[p], cluster, snap,
                                 result.scammers).delta_cluster
            for p in cluster.pools
        )
        assert report.total_cluster == per_pool - 3 * fee

    def test_value_conservation_without_victims(self):
        # Every wei entering the pool comes back out at the burn; members'
        # aggregate profit is then exactly minus their gas spend on the pool.
        b = LedgerBuilder()
        s1, s2 = addr("s1"), addr("s2")
        gas = eth(0.002)
        liquidity = 5 * ETH
        wash = 2 * ETH
        pool = b.scam_pool(s1, "p", t_mint=10_000, t_burn=12_000, gas=gas,
                           liquidity=liquidity, payout=liquidity + wash)
        b.swap(pool, s2, wash, 11_000, gas=gas, log_index=9)
        b.scam_pool(s2, "q", t_mint=20_000, t_burn=21_000, liquidity=ETH,
                    payout=ETH)
        b.transfer(s1, s2, ETH, ts=1_000)
        snap = b.snapshot()
        result = scan(snap)
        clusters = build_clusters(result.scammers, result, snap)
        report = cluster_aware_profit(result.by_pool[pool], clusters.clusters[0],
                                      snap, result.scammers)
        # mint gas + burn gas + wash swap gas (creation rows are pool-side
        # setup, not pool legs)
        assert report.delta_cluster == -3 * gas


class TestInflationSummary:
    def test_zero_wash_dataset(self):
        b, pool, _ = single_pool_cluster()
        snap = b.snapshot()
        result = scan(snap)
        clusters = build_clusters(result.scammers, result, snap)
        cluster = clusters.clusters[0]
        reports = [
            cluster_aware_profit(result.by_pool[p], cluster, snap, result.scammers)
            for p in cluster.pools
        ]
        totals = [cluster_total_profit(cluster, result, snap)]
        summary = inflation_summary(reports, totals)
        assert summary.pool_inflation_pct == 0
        assert summary.wash_cluster_share_pct == 0

    def test_pumpkin_inflation(self):
        snap, result, pool, _ = build_pumpkin()
        clusters = build_clusters(result.scammers, result, snap)
        cluster = clusters.clusters[0]
        reports = [
            cluster_aware_profit(result.by_pool[p], cluster, snap, result.scammers)
            for p in cluster.pools
        ]
        summary = inflation_summary(reports, [cluster_total_profit(cluster, result, snap)])
        assert summary.wash_cluster_share_pct == 100.0
        assert summary.pool_inflation_pct > 0
