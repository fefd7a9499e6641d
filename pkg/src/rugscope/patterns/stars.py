"""Scam-star detection: satellites sharing one funding and/or beneficiary center.

Per satellite, the major funder is the sender of the single largest
in-transfer before the first scam, provided that one transfer covers 100%
of the first-scam cost; the major beneficiary is the receiver of the
single largest out-transfer after the last scam, provided it covers at
least p of the last-scam revenue. "Largest" uses the ledger's canonical
tie order (value desc, then earlier), so equal-value ties resolve
deterministically instead of disqualifying.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional, Union

from ..ledger import DAY_SECONDS, DatasetSnapshot, NativeTransfer
from ..rugpull import ScanResult
from .funding import as_fraction, covers, funding_profile


class StarKind(str, Enum):
    IN = "in"           # common beneficiary
    OUT = "out"         # common funder
    IN_OUT = "in_out"   # common funder and beneficiary


@dataclass(frozen=True, slots=True)
class StarResult:
    kind: StarKind
    center: str
    satellites: frozenset[str]
    fund_in: int    # total entering the center from satellites
    fund_out: int   # total leaving the center to satellites
    period_days: float
    scam_count: int
    center_is_scammer: bool

    @property
    def size(self) -> int:
        return len(self.satellites)


@dataclass(frozen=True, slots=True)
class _Candidate:
    satellite: str
    center: str
    in_transfer: Optional[NativeTransfer]
    out_transfer: Optional[NativeTransfer]


def _major_funder(
    addr: str,
    snapshot: DatasetSnapshot,
    scan_result: ScanResult,
    cost: int,
) -> Optional[NativeTransfer]:
    window = scan_result.windows[addr]
    ins = snapshot.transfers_before(addr, window.first_scam_start, "in")
    if not ins:
        return None
    top = ins[0]
    if top.sender == addr:
        return None
    if not covers(top.value, cost, Fraction(1)):
        return None
    return top


def _major_beneficiary(
    addr: str,
    snapshot: DatasetSnapshot,
    scan_result: ScanResult,
    revenue: int,
    share: Fraction,
) -> Optional[NativeTransfer]:
    window = scan_result.windows[addr]
    outs = snapshot.transfers_after(addr, window.last_scam_end, "out")
    if not outs:
        return None
    top = outs[0]
    if top.receiver == addr:
        return None
    if not covers(top.value, revenue, share):
        return None
    return top


def _ever_sent(snapshot: DatasetSnapshot, sender: str, receiver: str) -> bool:
    return any(t.receiver == receiver for t in snapshot.transfers_of(sender, "out"))


def detect_stars(
    scammers: Iterable[str],
    p: Union[float, Fraction],
    snapshot: DatasetSnapshot,
    scan_result: ScanResult,
    n_min: int = 5,
    include_own_swaps: bool = False,
) -> list[StarResult]:
    """All maximal scam stars over the given scammers; each (address, kind)
    pair joins at most one star."""
    share = as_fraction(p)
    candidates: dict[tuple[StarKind, str], list[_Candidate]] = {}

    for addr in sorted(set(scammers)):
        if addr not in scan_result.windows:
            continue
        profile = funding_profile(addr, scan_result, snapshot, include_own_swaps)
        fund_in = _major_funder(addr, snapshot, scan_result, profile.first_scam_cost)
        fund_out = _major_beneficiary(
            addr, snapshot, scan_result, profile.last_scam_revenue, share
        )
        funder = fund_in.sender if fund_in else None
        beneficiary = fund_out.receiver if fund_out else None

        if funder and beneficiary and funder == beneficiary:
            candidates.setdefault((StarKind.IN_OUT, funder), []).append(
                _Candidate(addr, funder, fund_in, fund_out)
            )
            continue
        if funder and not _ever_sent(snapshot, addr, funder):
            candidates.setdefault((StarKind.OUT, funder), []).append(
                _Candidate(addr, funder, fund_in, None)
            )
        if beneficiary and not _ever_sent(snapshot, beneficiary, addr):
            candidates.setdefault((StarKind.IN, beneficiary), []).append(
                _Candidate(addr, beneficiary, None, fund_out)
            )

    stars: list[StarResult] = []
    for (kind, center), members in sorted(candidates.items()):
        if len(members) < n_min:
            continue
        stars.append(_assemble(kind, center, members, scan_result))
    return stars


def _assemble(
    kind: StarKind,
    center: str,
    members: list[_Candidate],
    scan_result: ScanResult,
) -> StarResult:
    satellites = frozenset(m.satellite for m in members)
    fund_out = sum(m.in_transfer.value for m in members if m.in_transfer)
    fund_in = sum(m.out_transfer.value for m in members if m.out_transfer)

    starts = [scan_result.windows[s].first_scam_start for s in satellites]
    ends = [scan_result.windows[s].last_scam_end for s in satellites]
    pools = set()
    for s in satellites:
        pools.update(scan_result.windows[s].pools)

    return StarResult(
        kind=kind,
        center=center,
        satellites=satellites,
        fund_in=fund_in,
        fund_out=fund_out,
        period_days=(max(ends) - min(starts)) / DAY_SECONDS,
        scam_count=len(pools),
        center_is_scammer=center in scan_result.windows,
    )
