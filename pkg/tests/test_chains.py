from rugscope.patterns import detect_chains
from rugscope.rugpull import scan

from conftest import ETH, LedgerBuilder, addr


def plant_chain(b: LedgerBuilder, tags: list[str], *, t0=10_000, link_eth=8,
                cost_eth=5, revenue_eth=20):
    """Scammers in sequence, each funding the next after its own burn.

    Revenue is kept well above the link value so the links do not double
    as major-flow beneficiary sets.
    """
    members = [addr(t) for t in tags]
    step = 10_000
    b.transfer(addr("seed-" + tags[0]), members[0], (cost_eth + 1) * ETH, ts=t0 - 500)
    for i, (tag, member) in enumerate(zip(tags, members)):
        start = t0 + i * step
        b.scam_pool(member, tag, t_mint=start, t_burn=start + 1_000,
                    liquidity=cost_eth * ETH, payout=revenue_eth * ETH)
        if i + 1 < len(members):
            b.transfer(member, members[i + 1], link_eth * ETH, ts=start + 2_000)
    return members


class TestDetectChains:
    def test_planted_chain_recovered_intact(self):
        b = LedgerBuilder()
        members = plant_chain(b, [f"c{i}" for i in range(5)])
        snap = b.snapshot()
        result = scan(snap)
        chains = detect_chains(result.scammers, snap, result)
        assert len(chains) == 1
        assert list(chains[0].members) == members
        assert chains[0].length == 5
        assert chains[0].scam_count == 5
        assert len(chains[0].link_transfers) == 4

    def test_equal_max_amounts_earlier_wins(self):
        b = LedgerBuilder()
        s = addr("head")
        a, c = addr("early"), addr("late")
        b.transfer(addr("seed"), s, 6 * ETH, ts=1_000)
        b.scam_pool(s, "head", t_mint=10_000, t_burn=11_000,
                    liquidity=5 * ETH, payout=30 * ETH)
        # two equal out-transfers to different scammers; earlier wins
        b.transfer(s, a, 8 * ETH, ts=12_000)
        b.transfer(s, c, 8 * ETH, ts=12_500)
        for tag, member, start in (("a", a, 20_000), ("c", c, 30_000)):
            b.scam_pool(member, tag, t_mint=start, t_burn=start + 1_000,
                        liquidity=5 * ETH, payout=30 * ETH)
        snap = b.snapshot()
        result = scan(snap)
        chains = detect_chains(result.scammers, snap, result)
        assert len(chains) == 1
        assert list(chains[0].members) == [s, a]

    def test_head_funder_with_other_beneficiary_excluded(self):
        # The 89d1/7ec2 shape: 7ec2 is 89d1's largest funder, but 89d1 is not
        # 7ec2's largest beneficiary, so the chain starts at 89d1.
        b = LedgerBuilder()
        b7ec2, b89d1, elsewhere = addr("7ec2"), addr("89d1"), addr("elsewhere")
        b.scam_pool(b7ec2, "p7", t_mint=1_000, t_burn=2_000,
                    liquidity=2 * ETH, payout=40 * ETH)
        b.transfer(b7ec2, b89d1, 6 * ETH, ts=3_000)
        b.transfer(b7ec2, elsewhere, 20 * ETH, ts=3_100)  # its real beneficiary
        members = plant_chain(b, ["89d1", "n1", "n2"], t0=10_000)
        snap = b.snapshot()
        result = scan(snap)
        chains = detect_chains(result.scammers, snap, result)
        assert len(chains) == 1
        got = list(chains[0].members)
        assert got == members
        assert b7ec2 not in got

    def test_c2_transfer_before_last_scam_not_a_link(self):
        b = LedgerBuilder()
        s1, s2 = addr("s1"), addr("s2")
        b.scam_pool(s1, "p1", t_mint=10_000, t_burn=20_000,
                    liquidity=2 * ETH, payout=30 * ETH)
        # transfer while s1's scam is still open: violates C2
        b.transfer(s1, s2, 8 * ETH, ts=15_000)
        b.scam_pool(s2, "p2", t_mint=30_000, t_burn=31_000,
                    liquidity=5 * ETH, payout=20 * ETH)
        snap = b.snapshot()
        result = scan(snap)
        assert detect_chains(result.scammers, snap, result) == []

    def test_larger_transfer_after_first_scam_blocks_head_link(self):
        # The 713-chain head case: the max in-transfer arrived after the first
        # scam (C2 fails for it), and the earlier, smaller one fails C1.
        b = LedgerBuilder()
        funder, head = addr("funder"), addr("head")
        b.scam_pool(funder, "pf", t_mint=1_000, t_burn=2_000,
                    liquidity=2 * ETH, payout=40 * ETH)
        b.transfer(funder, head, 5 * ETH, ts=3_000)    # before first scam, smaller
        b.scam_pool(head, "ph", t_mint=10_000, t_burn=60_000,
                    liquidity=4 * ETH, payout=30 * ETH)
        b.transfer(funder, head, 9 * ETH, ts=20_000)   # larger, mid-scam
        snap = b.snapshot()
        result = scan(snap)
        chains = detect_chains(result.scammers, snap, result)
        assert all(head not in c.members or funder not in c.members for c in chains)
        assert chains == []

    def test_no_address_in_two_chains(self):
        b = LedgerBuilder()
        plant_chain(b, [f"x{i}" for i in range(4)], t0=10_000)
        plant_chain(b, [f"y{i}" for i in range(3)], t0=200_000)
        snap = b.snapshot()
        result = scan(snap)
        chains = detect_chains(result.scammers, snap, result)
        assert len(chains) == 2
        seen = set()
        for chain in chains:
            assert not (set(chain.members) & seen)
            seen.update(chain.members)
