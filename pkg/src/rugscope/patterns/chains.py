"""Max-in-max-out scam chain detection.

A link s -> s' exists when one transfer t is simultaneously the largest
out-transfer of s and the largest in-transfer of s' (over their whole
histories, under the canonical tie order), both are scammers, and t falls
after s's last scam and before s''s first scam. Under unique maxima every
address has at most one successor and one predecessor, so the links form
a partial matching whose maximal paths are the chains.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from ..ledger import DAY_SECONDS, DatasetSnapshot, NativeTransfer, funding_order_key
from ..rugpull import ScanResult


@dataclass(frozen=True, slots=True)
class ChainResult:
    members: tuple[str, ...]
    link_transfers: tuple[NativeTransfer, ...]
    period_days: float
    scam_count: int

    @property
    def length(self) -> int:
        return len(self.members)


def _top_transfer(snapshot: DatasetSnapshot, addr: str, direction: str) -> Optional[NativeTransfer]:
    rows = snapshot.transfers_of(addr, direction)
    if not rows:
        return None
    return min(rows, key=funding_order_key)


def detect_chains(
    scammers: Iterable[str],
    snapshot: DatasetSnapshot,
    scan_result: ScanResult,
) -> list[ChainResult]:
    """All maximal chains of length >= 2; an address appears in at most one."""
    members = sorted(s for s in set(scammers) if s in scan_result.windows)
    member_set = set(members)

    successor: dict[str, tuple[str, NativeTransfer]] = {}
    has_predecessor: set[str] = set()
    for s in members:
        t = _top_transfer(snapshot, s, "out")
        if t is None or t.receiver not in member_set or t.receiver == s:
            continue
        nxt = t.receiver
        if _top_transfer(snapshot, nxt, "in") != t:
            continue
        if not (scan_result.windows[s].last_scam_end
                < t.timestamp
                < scan_result.windows[nxt].first_scam_start):
            continue
        successor[s] = (nxt, t)
        has_predecessor.add(nxt)

    chains: list[ChainResult] = []
    for head in members:
        if head not in successor or head in has_predecessor:
            continue
        path = [head]
        links: list[NativeTransfer] = []
        seen = {head}
        current = head
        while current in successor:
            nxt, t = successor[current]
            if nxt in seen:  # timing makes cycles impossible; guard anyway
                break
            path.append(nxt)
            links.append(t)
            seen.add(nxt)
            current = nxt
        if len(path) >= 2:
            chains.append(_assemble(path, links, scan_result))
    return chains


def _assemble(path: list[str], links: list[NativeTransfer],
              scan_result: ScanResult) -> ChainResult:
    starts = [scan_result.windows[s].first_scam_start for s in path]
    ends = [scan_result.windows[s].last_scam_end for s in path]
    pools = set()
    for s in path:
        pools.update(scan_result.windows[s].pools)
    return ChainResult(
        members=tuple(path),
        link_transfers=tuple(links),
        period_days=(max(ends) - min(starts)) / DAY_SECONDS,
        scam_count=len(pools),
    )
