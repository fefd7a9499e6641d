"""One-day Simple Rug Pull classification and scammer extraction.

A native pool is a scam pool when its whole event history fits inside a
rolling 86,400-second window, its non-native token is paired nowhere else,
and it fired exactly one mint plus one burn that destroyed at least 99% of
the minted LP tokens. The burn test is integer cross-multiplication
(100*burned >= 99*minted); no floating point anywhere near it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Optional, Union

from .ledger import (
    DAY_SECONDS,
    DatasetSnapshot,
    EventKind,
    ExchangePool,
    PoolEventRecord,
    canonical_address,
)


class NotScamReason(str, Enum):
    NOT_NATIVE = "not_native"
    NO_EVENTS = "no_events"
    NOT_ONE_DAY = "not_one_day"
    TOKEN_MULTI_POOL = "token_multi_pool"
    NO_MINT = "no_mint"
    MULTIPLE_MINTS = "multiple_mints"
    NO_BURN = "no_burn"
    MULTIPLE_BURNS = "multiple_burns"
    INSUFFICIENT_BURN = "insufficient_burn"


@dataclass(frozen=True, slots=True)
class NotScam:
    pool: str
    reason: NotScamReason


@dataclass(frozen=True, slots=True)
class ScamPoolRecord:
    """A classified one-day Simple Rug Pull with its four scammer roles.

    ``token_creator`` may be None when no contract metadata exists for the
    scam token; the other three roles always resolve from pool data.
    """

    pool: str
    scam_token: str
    mint_event: PoolEventRecord
    burn_event: PoolEventRecord
    token_creator: Optional[str]
    pool_creator: str
    liquidity_provider: str
    liquidity_remover: str
    lifetime_seconds: int
    native_added: int
    native_removed: int

    def roles(self) -> frozenset[str]:
        """The deduplicated role addresses (the raw Def.-2 scammer set)."""
        out = {self.pool_creator, self.liquidity_provider, self.liquidity_remover}
        if self.token_creator:
            out.add(self.token_creator)
        return frozenset(out)


@dataclass
class ExclusionList:
    """Labelled public/service addresses excluded from scammer sets."""

    labels: dict[str, str] = field(default_factory=dict)

    def __contains__(self, addr: str) -> bool:
        return addr in self.labels

    def add(self, addr: str, label: str = "") -> None:
        self.labels[canonical_address(addr)] = label

    @classmethod
    def from_addresses(cls, addresses: Iterable[str]) -> "ExclusionList":
        out = cls()
        for a in addresses:
            out.add(a)
        return out

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "ExclusionList":
        """Newline-delimited addresses with an optional whitespace-separated label."""
        out = cls()
        for line in Path(path).read_text(encoding="utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split(None, 1)
            out.add(parts[0], parts[1] if len(parts) > 1 else "")
        return out


@dataclass(frozen=True, slots=True)
class ScamWindow:
    """Per-scammer timeline over all of the address's scam pools."""

    address: str
    first_scam_start: int  # first liquidity add
    last_scam_end: int     # last liquidity removal
    first_pool: str
    last_pool: str
    pools: tuple[str, ...]


@dataclass
class ScanResult:
    records: list[ScamPoolRecord]
    reasons: dict[str, NotScamReason]
    scammers: frozenset[str]
    windows: dict[str, ScamWindow]
    pools_scanned: int
    non_native_skipped: int
    exclusion_hits: int

    @property
    def by_pool(self) -> dict[str, ScamPoolRecord]:
        return {r.pool: r for r in self.records}

    def pools_of(self, addr: str) -> tuple[str, ...]:
        window = self.windows.get(addr)
        return window.pools if window else ()


def classify_pool(
    pool: ExchangePool,
    events: Iterable[PoolEventRecord],
    snapshot: DatasetSnapshot,
    day_seconds: int = DAY_SECONDS,
    burn_pct: int = 99,
) -> Union[ScamPoolRecord, NotScam]:
    """Classify one native pool; NotScam carries the first violated clause."""
    rows = list(events)
    if not pool.is_native:
        return NotScam(pool.address, NotScamReason.NOT_NATIVE)
    if not rows:
        return NotScam(pool.address, NotScamReason.NO_EVENTS)

    lifetime = rows[-1].timestamp - rows[0].timestamp
    if lifetime > day_seconds:
        return NotScam(pool.address, NotScamReason.NOT_ONE_DAY)

    token = pool.scam_token
    if len(set(snapshot.pools_of_token(token))) > 1:
        return NotScam(pool.address, NotScamReason.TOKEN_MULTI_POOL)

    mints = [e for e in rows if e.kind is EventKind.MINT]
    burns = [e for e in rows if e.kind is EventKind.BURN]
    if not mints:
        return NotScam(pool.address, NotScamReason.NO_MINT)
    if len(mints) > 1:
        return NotScam(pool.address, NotScamReason.MULTIPLE_MINTS)
    if not burns:
        return NotScam(pool.address, NotScamReason.NO_BURN)
    if len(burns) > 1:
        return NotScam(pool.address, NotScamReason.MULTIPLE_BURNS)

    mint, burn = mints[0], burns[0]
    if 100 * burn.lp_amount < burn_pct * mint.lp_amount:
        return NotScam(pool.address, NotScamReason.INSUFFICIENT_BURN)

    contract = snapshot.contracts.get(token)
    return ScamPoolRecord(
        pool=pool.address,
        scam_token=token,
        mint_event=mint,
        burn_event=burn,
        token_creator=contract.creator if contract else None,
        pool_creator=pool.creator,
        liquidity_provider=mint.actor,
        liquidity_remover=burn.actor,
        lifetime_seconds=lifetime,
        native_added=mint.amount_native,
        native_removed=burn.amount_native,
    )


def extract_scammers(
    record: ScamPoolRecord,
    exclusions: Optional[ExclusionList],
    snapshot: DatasetSnapshot,
) -> frozenset[str]:
    """Role addresses minus exclusion-list members and addresses with no
    activity inside the dataset's collection window."""
    out = set()
    for addr in record.roles():
        if exclusions and addr in exclusions:
            continue
        if not snapshot.has_activity(addr):
            continue
        out.add(addr)
    return frozenset(out)


def scan(
    snapshot: DatasetSnapshot,
    exclusions: Optional[ExclusionList] = None,
    day_seconds: int = DAY_SECONDS,
    burn_pct: int = 99,
) -> ScanResult:
    """Classify every native pool and aggregate the scammer set.

    Iteration is in sorted pool-address order, so results are independent
    of input ordering.
    """
    records: list[ScamPoolRecord] = []
    reasons: dict[str, NotScamReason] = {}
    scammers: set[str] = set()
    exclusion_hits = 0
    non_native = sum(1 for p in snapshot.pools.values() if not p.is_native)

    native = snapshot.native_pools()
    for pool in native:
        outcome = classify_pool(pool, snapshot.pool_events_of(pool.address),
                                snapshot, day_seconds, burn_pct)
        if isinstance(outcome, NotScam):
            reasons[pool.address] = outcome.reason
            continue
        records.append(outcome)
        members = extract_scammers(outcome, exclusions, snapshot)
        exclusion_hits += len(outcome.roles()) - len(members)
        scammers.update(members)

    windows = _build_windows(records, scammers)
    return ScanResult(
        records=records,
        reasons=reasons,
        scammers=frozenset(scammers),
        windows=windows,
        pools_scanned=len(native),
        non_native_skipped=non_native,
        exclusion_hits=exclusion_hits,
    )


def _build_windows(
    records: Iterable[ScamPoolRecord],
    scammers: Iterable[str],
) -> dict[str, ScamWindow]:
    keep = set(scammers)
    per_addr: dict[str, list[ScamPoolRecord]] = {}
    for record in records:
        for addr in record.roles():
            if addr in keep:
                per_addr.setdefault(addr, []).append(record)

    windows: dict[str, ScamWindow] = {}
    for addr, recs in per_addr.items():
        first = min(recs, key=lambda r: (r.mint_event.timestamp, r.pool))
        last = max(recs, key=lambda r: (r.burn_event.timestamp, r.pool))
        windows[addr] = ScamWindow(
            address=addr,
            first_scam_start=first.mint_event.timestamp,
            last_scam_end=last.burn_event.timestamp,
            first_pool=first.pool,
            last_pool=last.pool,
            pools=tuple(sorted(r.pool for r in recs)),
        )
    return windows
