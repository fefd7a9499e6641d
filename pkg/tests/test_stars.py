from rugscope.patterns import StarKind, detect_stars
from rugscope.rugpull import scan

from conftest import ETH, LedgerBuilder, addr


def plant_satellite(b: LedgerBuilder, tag: str, center: str, *, kind: str,
                    t0: int, cost_eth=5, revenue_eth=6):
    """One scammer fully funded / refunding per star kind."""
    s = addr("sat-" + tag)
    cost, revenue = cost_eth * ETH, revenue_eth * ETH
    if kind in ("out", "in_out"):
        b.transfer(center, s, cost + ETH, ts=t0)  # covers 100% in one transfer
    else:
        b.transfer(addr("ext-" + tag), s, cost + ETH, ts=t0)
    b.scam_pool(s, tag, t_mint=t0 + 100, t_burn=t0 + 600,
                liquidity=cost, payout=revenue)
    if kind in ("in", "in_out"):
        target = center if kind != "in" else center
        b.transfer(s, target, revenue, ts=t0 + 700)  # >= 90% of revenue
    return s


class TestDetectStars:
    def test_in_out_star_of_six(self):
        b = LedgerBuilder()
        center = addr("dc5b")
        sats = {plant_satellite(b, f"s{i}", center, kind="in_out", t0=10_000 + i * 2_000)
                for i in range(6)}
        snap = b.snapshot()
        result = scan(snap)
        stars = detect_stars(result.scammers, 0.9, snap, result)
        assert len(stars) == 1
        star = stars[0]
        assert star.kind is StarKind.IN_OUT
        assert star.center == center
        assert star.satellites == sats
        assert star.size == 6
        assert star.scam_count == 6
        assert not star.center_is_scammer
        assert star.fund_out == 6 * 6 * ETH   # funding leaves the center
        assert star.fund_in == 6 * 6 * ETH    # revenue returns to it

    def test_four_satellites_is_no_star(self):
        b = LedgerBuilder()
        center = addr("c")
        for i in range(4):
            plant_satellite(b, f"s{i}", center, kind="out", t0=10_000 + i * 2_000)
        snap = b.snapshot()
        result = scan(snap)
        assert detect_stars(result.scammers, 0.9, snap, result) == []

    def test_in_and_out_stars_with_distinct_centers(self):
        b = LedgerBuilder()
        funder, sink = addr("funder"), addr("sink")
        for i in range(5):
            plant_satellite(b, f"o{i}", funder, kind="out", t0=10_000 + i * 2_000)
        for i in range(5):
            plant_satellite(b, f"i{i}", sink, kind="in", t0=40_000 + i * 2_000)
        snap = b.snapshot()
        result = scan(snap)
        stars = detect_stars(result.scammers, 0.9, snap, result)
        kinds = {(s.kind, s.center) for s in stars}
        assert kinds == {(StarKind.OUT, funder), (StarKind.IN, sink)}

    def test_backflow_disqualifies_out_star(self):
        b = LedgerBuilder()
        center = addr("c")
        sats = [plant_satellite(b, f"s{i}", center, kind="out", t0=10_000 + i * 2_000)
                for i in range(5)]
        # one satellite sends dust back to the center at any time
        b.transfer(sats[0], center, 1, ts=90_000)
        snap = b.snapshot()
        result = scan(snap)
        stars = detect_stars(result.scammers, 0.9, snap, result)
        assert stars == []  # only 4 clean satellites remain

    def test_partial_funding_not_a_satellite(self):
        b = LedgerBuilder()
        center = addr("c")
        for i in range(5):
            plant_satellite(b, f"s{i}", center, kind="out", t0=10_000 + i * 2_000)
        # this one received only half its cost from the center
        weak = addr("weak")
        b.transfer(center, weak, 3 * ETH, ts=50_000)
        b.scam_pool(weak, "weak", t_mint=50_100, t_burn=50_600,
                    liquidity=6 * ETH, payout=7 * ETH)
        snap = b.snapshot()
        result = scan(snap)
        stars = detect_stars(result.scammers, 0.9, snap, result)
        assert len(stars) == 1
        assert weak not in stars[0].satellites

    def test_equal_value_funders_resolved_by_time(self):
        b = LedgerBuilder()
        early, late = addr("early"), addr("late")
        s = addr("sat")
        b.transfer(early, s, 6 * ETH, ts=1_000)
        b.transfer(late, s, 6 * ETH, ts=1_500)
        b.scam_pool(s, "p", t_mint=10_000, t_burn=10_500,
                    liquidity=5 * ETH, payout=6 * ETH)
        snap = b.snapshot()
        result = scan(snap)
        # center resolution is deterministic: the earlier transfer wins
        stars = detect_stars(result.scammers, 0.9, snap, result, n_min=1)
        out_stars = [st for st in stars if st.kind is StarKind.OUT]
        assert len(out_stars) == 1
        assert out_stars[0].center == early

    def test_scammer_center_is_flagged(self):
        b = LedgerBuilder()
        center = addr("boss")
        b.scam_pool(center, "own", t_mint=1_000, t_burn=1_500,
                    liquidity=ETH, payout=50 * ETH)
        for i in range(5):
            plant_satellite(b, f"s{i}", center, kind="out", t0=10_000 + i * 2_000)
        snap = b.snapshot()
        result = scan(snap)
        stars = detect_stars(result.scammers, 0.9, snap, result)
        assert len(stars) == 1
        assert stars[0].center_is_scammer
