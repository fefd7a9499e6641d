"""Scam economics per scammer address: first-scam cost, last-scam revenue,
and the minimal funding/beneficiary transaction sets built from them.

Cost of the first scam = native liquidity the address added to its first
scam pool plus the gas of the token-creation, pool-creation, and
add-liquidity transactions it sent. Revenue of the last scam = the burn's
native leg minus the gas of the removal transaction. Own swap-ins into the
first pool recirculate pool-side and are excluded by default (toggle).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from ..ledger import DatasetSnapshot, EventKind, NativeTransfer, TransferKind
from ..rugpull import ScanResult


def as_fraction(p: Union[float, str, Fraction, int]) -> Fraction:
    """Exact fraction for a share threshold; floats go through str() so
    0.9 means 9/10, not the nearest binary double."""
    if isinstance(p, Fraction):
        value = p
    elif isinstance(p, float):
        value = Fraction(str(p))
    else:
        value = Fraction(p)
    if not 0 <= value <= 1:
        raise ValueError(f"share threshold must be in [0, 1], got {p!r}")
    return value


def covers(amount: int, target: int, share: Fraction) -> bool:
    """amount >= share * target, exactly, in integers."""
    return amount * share.denominator >= target * share.numerator


@dataclass(frozen=True, slots=True)
class FundingProfile:
    """Cost and revenue anchors for one scammer."""

    address: str
    first_scam_cost: int
    last_scam_revenue: int


@dataclass(frozen=True, slots=True)
class FundingSets:
    """Def.-3 sets for one scammer: T_F/T_B plus their counterparties.

    Either side is None when the covering target is unreachable from the
    available transfers (the paper's "does not exist" case).
    """

    address: str
    t_f: Optional[tuple[NativeTransfer, ...]]
    t_b: Optional[tuple[NativeTransfer, ...]]
    funders: frozenset[str]
    beneficiaries: frozenset[str]
    first_scam_cost: int
    last_scam_revenue: int


def _creation_gas(snapshot: DatasetSnapshot, creator: str, created: str) -> int:
    """Gas of the earliest normal transaction from ``creator`` that targets
    the created contract (the creation row ingestion synthesizes)."""
    for t in snapshot.transfers_of(created, "in"):
        if t.sender == creator and t.kind is TransferKind.NORMAL:
            return t.gas_fee
    return 0


def scam_cost(
    addr: str,
    scan_result: ScanResult,
    snapshot: DatasetSnapshot,
    include_own_swaps: bool = False,
) -> int:
    """First-scam cost in wei; 0 when the address held no paying role there."""
    window = scan_result.windows.get(addr)
    if window is None:
        return 0
    record = scan_result.by_pool[window.first_pool]
    cost = 0
    if record.liquidity_provider == addr:
        cost += record.mint_event.amount_native
        cost += snapshot.gas_fee_of_tx(record.mint_event.tx_hash)
    if record.token_creator == addr:
        cost += _creation_gas(snapshot, addr, record.scam_token)
    if record.pool_creator == addr:
        cost += _creation_gas(snapshot, addr, record.pool)
    if include_own_swaps:
        for event in snapshot.pool_events_of(record.pool):
            if event.kind is EventKind.SWAP and event.actor == addr and event.amount_native > 0:
                cost += event.amount_native + snapshot.gas_fee_of_tx(event.tx_hash)
    return cost


def scam_revenue(addr: str, scan_result: ScanResult, snapshot: DatasetSnapshot) -> int:
    """Last-scam revenue in wei, floored at zero."""
    window = scan_result.windows.get(addr)
    if window is None:
        return 0
    record = scan_result.by_pool[window.last_pool]
    if record.liquidity_remover != addr:
        return 0
    revenue = record.burn_event.amount_native - snapshot.gas_fee_of_tx(record.burn_event.tx_hash)
    return max(revenue, 0)


def funding_profile(
    addr: str,
    scan_result: ScanResult,
    snapshot: DatasetSnapshot,
    include_own_swaps: bool = False,
) -> FundingProfile:
    return FundingProfile(
        address=addr,
        first_scam_cost=scam_cost(addr, scan_result, snapshot, include_own_swaps),
        last_scam_revenue=scam_revenue(addr, scan_result, snapshot),
    )


def _greedy_cover(
    candidates: list[NativeTransfer],
    target: int,
    share: Fraction,
) -> Optional[tuple[NativeTransfer, ...]]:
    """Shortest prefix of the funding-ordered candidates whose sum covers
    share*target; None when even the full list falls short."""
    if target <= 0:
        return ()
    taken: list[NativeTransfer] = []
    cum = 0
    for t in candidates:
        if covers(cum, target, share):
            break
        taken.append(t)
        cum += t.value
    if not covers(cum, target, share):
        return None
    return tuple(taken)


def compute_funding_sets(
    addr: str,
    p: Union[float, Fraction],
    snapshot: DatasetSnapshot,
    scan_result: ScanResult,
    include_own_swaps: bool = False,
) -> Optional[FundingSets]:
    """Def.-3 funding sets for one scammer; None when the address has no
    scam window at all. T_F targets 100% of the first-scam cost, T_B
    targets p of the last-scam revenue."""
    window = scan_result.windows.get(addr)
    if window is None:
        return None
    share = as_fraction(p)
    profile = funding_profile(addr, scan_result, snapshot, include_own_swaps)

    ins = snapshot.transfers_before(addr, window.first_scam_start, "in")
    t_f = _greedy_cover(ins, profile.first_scam_cost, Fraction(1))

    outs = snapshot.transfers_after(addr, window.last_scam_end, "out")
    t_b = _greedy_cover(outs, profile.last_scam_revenue, share)

    return FundingSets(
        address=addr,
        t_f=t_f,
        t_b=t_b,
        funders=frozenset(t.sender for t in t_f) if t_f else frozenset(),
        beneficiaries=frozenset(t.receiver for t in t_b) if t_b else frozenset(),
        first_scam_cost=profile.first_scam_cost,
        last_scam_revenue=profile.last_scam_revenue,
    )
