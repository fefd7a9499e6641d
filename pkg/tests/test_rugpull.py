import pytest

from rugscope.ledger import DAY_SECONDS, build_snapshot
from rugscope.rugpull import (
    ExclusionList,
    NotScam,
    NotScamReason,
    ScamPoolRecord,
    classify_pool,
    extract_scammers,
    scan,
)

from conftest import WETH, addr, mk_contract, mk_event, mk_pool, mk_transfer, tx


def one_day_pool(pool_tag="pool", token_tag="tok", *, owner=None, t0=1_000_000,
                 lifetime=2_000, minted=10**18, burned=None, add_native=5 * 10**18,
                 remove_native=None, extra_events=(), creator=None):
    """A single mint + single burn native pool fixture."""
    owner = owner or addr("scammer")
    creator = creator or owner
    pool_addr = addr(pool_tag)
    pool = mk_pool(pool_addr, addr(token_tag), creator=creator, created_at=t0 - 10)
    burned = minted if burned is None else burned
    remove_native = add_native if remove_native is None else remove_native
    events = [
        mk_event(pool_addr, "mint", ts=t0, actor=owner, amount_native=add_native,
                 amount_token=250_000_000 * 10**18, lp_amount=minted, tx_hash=tx()),
        *extra_events,
        mk_event(pool_addr, "burn", ts=t0 + lifetime, actor=owner,
                 amount_native=remove_native, amount_token=241_000_000 * 10**18,
                 lp_amount=burned, tx_hash=tx()),
    ]
    return pool, sorted(events, key=lambda e: (e.block, e.log_index))


def snapshot_for(pools_events, transfers=(), contracts=()):
    pools = [p for p, _ in pools_events]
    events = [e for _, evs in pools_events for e in evs]
    return build_snapshot(transfers, events, pools, contracts, wrapped_native=WETH)


class TestClassifyPool:
    def test_classic_one_day_scam(self):
        # 5 ETH in, 5.19 ETH out, full burn, within a day.
        pool, events = one_day_pool(add_native=5 * 10**18, remove_native=519 * 10**16)
        snap = snapshot_for([(pool, events)])
        record = classify_pool(pool, events, snap)
        assert isinstance(record, ScamPoolRecord)
        assert record.native_added == 5 * 10**18
        assert record.native_removed == 519 * 10**16
        assert record.liquidity_provider == addr("scammer")

    def test_two_mints_rejected(self):
        owner = addr("scammer")
        extra = mk_event(addr("pool"), "mint", ts=1_000_100, actor=owner,
                         amount_native=10**18, lp_amount=10**17)
        pool, events = one_day_pool(extra_events=[extra])
        snap = snapshot_for([(pool, events)])
        outcome = classify_pool(pool, events, snap)
        assert isinstance(outcome, NotScam)
        assert outcome.reason is NotScamReason.MULTIPLE_MINTS

    @pytest.mark.parametrize(
        "minted,burned,expected_scam",
        [
            (100_000, 98_999, False),  # 98.999%
            (100_000, 99_000, True),   # exactly 99.000%
            (100_000, 99_001, True),   # 99.001%
        ],
    )
    def test_burn_boundary_integer_exact(self, minted, burned, expected_scam):
        pool, events = one_day_pool(minted=minted, burned=burned)
        snap = snapshot_for([(pool, events)])
        outcome = classify_pool(pool, events, snap)
        if expected_scam:
            assert isinstance(outcome, ScamPoolRecord)
        else:
            assert isinstance(outcome, NotScam)
            assert outcome.reason is NotScamReason.INSUFFICIENT_BURN

    @pytest.mark.parametrize(
        "lifetime,expected_scam",
        [(DAY_SECONDS, True), (DAY_SECONDS + 1, False)],
    )
    def test_one_day_boundary(self, lifetime, expected_scam):
        pool, events = one_day_pool(lifetime=lifetime)
        snap = snapshot_for([(pool, events)])
        outcome = classify_pool(pool, events, snap)
        if expected_scam:
            assert isinstance(outcome, ScamPoolRecord)
        else:
            assert outcome.reason is NotScamReason.NOT_ONE_DAY

    def test_token_paired_twice_rejected(self):
        pool1, events1 = one_day_pool("pool1", "duptok")
        pool2, events2 = one_day_pool("pool2", "duptok", t0=2_000_000)
        snap = snapshot_for([(pool1, events1), (pool2, events2)])
        outcome = classify_pool(pool1, events1, snap)
        assert isinstance(outcome, NotScam)
        assert outcome.reason is NotScamReason.TOKEN_MULTI_POOL

    def test_token_creator_from_contract_metadata(self):
        pool, events = one_day_pool()
        contract = mk_contract(addr("tok"), addr("deployer"))
        snap = snapshot_for([(pool, events)], contracts=[contract])
        record = classify_pool(pool, events, snap)
        assert record.token_creator == addr("deployer")
        assert addr("deployer") in record.roles()


class TestExtractScammers:
    def test_all_roles_one_address(self):
        pool, events = one_day_pool()
        snap = snapshot_for([(pool, events)])
        record = classify_pool(pool, events, snap)
        assert extract_scammers(record, None, snap) == frozenset({addr("scammer")})

    def test_excluded_cex_removed(self):
        owner = addr("scammer")
        pool_addr = addr("pool")
        pool = mk_pool(pool_addr, addr("tok"), creator=owner)
        events = [
            mk_event(pool_addr, "mint", ts=100, actor=owner, amount_native=10**18,
                     lp_amount=100),
            mk_event(pool_addr, "burn", ts=200, actor=addr("cexhot"),
                     amount_native=10**18, lp_amount=100),
        ]
        snap = snapshot_for([(pool, events)])
        record = classify_pool(pool, events, snap)
        exclusions = ExclusionList.from_addresses([addr("cexhot")])
        members = extract_scammers(record, exclusions, snap)
        assert addr("cexhot") not in members
        assert owner in members

    def test_inactive_role_dropped(self):
        # Token creator appears only in contract metadata, with zero activity.
        pool, events = one_day_pool()
        contract = mk_contract(addr("tok"), addr("ghost"))
        snap = snapshot_for([(pool, events)], contracts=[contract])
        record = classify_pool(pool, events, snap)
        members = extract_scammers(record, None, snap)
        assert addr("ghost") not in members

    def test_distinct_roles_counted(self):
        pool_addr = addr("pool")
        creator, provider, remover = addr("cr"), addr("pv"), addr("rm")
        pool = mk_pool(pool_addr, addr("tok"), creator=creator)
        events = [
            mk_event(pool_addr, "mint", ts=100, actor=provider, amount_native=10**18,
                     lp_amount=100),
            mk_event(pool_addr, "burn", ts=200, actor=remover, amount_native=10**18,
                     lp_amount=100),
        ]
        creation = mk_transfer(creator, pool_addr, 0, ts=50, gas=10**15)
        snap = snapshot_for([(pool, events)], transfers=[creation])
        record = classify_pool(pool, events, snap)
        assert extract_scammers(record, None, snap) == frozenset({creator, provider, remover})


class TestScan:
    def test_finds_planted_scams_only(self):
        fixtures = []
        for i in range(7):
            fixtures.append(one_day_pool(f"scam{i}", f"stok{i}", owner=addr(f"s{i}"),
                                         t0=1_000_000 + i * 10_000))
        for i in range(5):
            fixtures.append(one_day_pool(f"slow{i}", f"ltok{i}", owner=addr(f"b{i}"),
                                         t0=2_000_000 + i * 10_000,
                                         lifetime=DAY_SECONDS + 100))
        snap = snapshot_for(fixtures)
        result = scan(snap)
        assert len(result.records) == 7
        assert result.pools_scanned == 12
        assert all(reason is NotScamReason.NOT_ONE_DAY
                   for reason in result.reasons.values())

    def test_all_non_native_scanned_zero(self):
        pool = mk_pool(addr("p"), addr("t"), creator=addr("c"), native_side="none")
        event = mk_event(addr("p"), "mint", ts=1, actor=addr("c"), lp_amount=1)
        snap = build_snapshot([], [event], [pool], wrapped_native=WETH)
        result = scan(snap)
        assert result.records == []
        assert result.pools_scanned == 0
        assert result.non_native_skipped == 1

    def test_order_independence(self):
        fixtures = [one_day_pool(f"p{i}", f"t{i}", owner=addr(f"o{i}"),
                                 t0=1_000_000 + i * 5_000) for i in range(6)]
        snap1 = snapshot_for(fixtures)
        snap2 = snapshot_for(list(reversed(fixtures)))
        r1, r2 = scan(snap1), scan(snap2)
        assert [x.pool for x in r1.records] == [x.pool for x in r2.records]
        assert r1.scammers == r2.scammers

    def test_windows_span_multiple_pools(self):
        owner = addr("serial")
        f1 = one_day_pool("p1", "t1", owner=owner, t0=1_000_000)
        f2 = one_day_pool("p2", "t2", owner=owner, t0=2_000_000, lifetime=500)
        snap = snapshot_for([f1, f2])
        result = scan(snap)
        window = result.windows[owner]
        assert window.first_scam_start == 1_000_000
        assert window.last_scam_end == 2_000_500
        assert window.first_pool == addr("p1")
        assert window.last_pool == addr("p2")
        assert set(window.pools) == {addr("p1"), addr("p2")}

    def test_monotone_second_pool_for_token_removes_scam(self):
        f1 = [one_day_pool("p1", "t1")]
        snap1 = snapshot_for(f1)
        assert len(scan(snap1).records) == 1
        f2 = f1 + [one_day_pool("p2", "t1", t0=3_000_000)]
        snap2 = snapshot_for(f2)
        result = scan(snap2)
        assert result.records == []
        assert result.reasons[addr("p1")] is NotScamReason.TOKEN_MULTI_POOL
