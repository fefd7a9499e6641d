"""Cross-pattern coverage statistics."""

from __future__ import annotations

from dataclasses import dataclass, field

from .chains import ChainResult
from .flows import MajorFlowResult
from .stars import StarResult


@dataclass
class OverlapReport:
    star_addresses: frozenset[str]
    chain_addresses: frozenset[str]
    flow_addresses: frozenset[str]
    star_and_chain: int
    star_and_flow: int
    chain_and_flow: int
    all_patterns: int
    flows_not_chains: int  # maximal flows of width > 2

    @property
    def total_covered(self) -> int:
        return len(self.star_addresses | self.chain_addresses | self.flow_addresses)

    def to_dict(self) -> dict:
        return {
            "stars": len(self.star_addresses),
            "chains": len(self.chain_addresses),
            "flows": len(self.flow_addresses),
            "star_and_chain": self.star_and_chain,
            "star_and_flow": self.star_and_flow,
            "chain_and_flow": self.chain_and_flow,
            "all_three": self.all_patterns,
            "flows_not_chains": self.flows_not_chains,
            "total_covered": self.total_covered,
        }


def pattern_overlap_report(
    stars: list[StarResult],
    chains: list[ChainResult],
    flows: list[MajorFlowResult],
) -> OverlapReport:
    """Unique scammer coverage per pattern kind and pairwise intersections.

    Star coverage counts satellites plus centers that are themselves
    scammers; non-scammer coordinators are not pattern members.
    """
    star_addrs: set[str] = set()
    for star in stars:
        star_addrs.update(star.satellites)
        if star.center_is_scammer:
            star_addrs.add(star.center)
    chain_addrs = {m for chain in chains for m in chain.members}
    flow_addrs = {v for flow in flows for v in flow.vertices}

    return OverlapReport(
        star_addresses=frozenset(star_addrs),
        chain_addresses=frozenset(chain_addrs),
        flow_addresses=frozenset(flow_addrs),
        star_and_chain=len(star_addrs & chain_addrs),
        star_and_flow=len(star_addrs & flow_addrs),
        chain_and_flow=len(chain_addrs & flow_addrs),
        all_patterns=len(star_addrs & chain_addrs & flow_addrs),
        flows_not_chains=sum(1 for f in flows if f.width > 2),
    )
