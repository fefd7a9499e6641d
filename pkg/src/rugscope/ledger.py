"""Immutable ledger model: transfers, pool events, pools, and per-address indexes.

Everything downstream (rug-pull scan, pattern mining, clustering, profit)
is a pure function of one :class:`DatasetSnapshot`. All native amounts are
integer wei; nothing in an accounting path touches floating point.
"""

from __future__ import annotations

import re
from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Optional, Sequence

from .errors import MalformedAddress, NonMonotonicPoolEvents, UnknownPoolReference

_ADDRESS_RE = re.compile(r"^0x[0-9a-f]{40}$")
_HASH_RE = re.compile(r"^0x[0-9a-f]{64}$")

WEI_PER_NATIVE = 10**18
DAY_SECONDS = 86_400


def canonical_address(value: str) -> str:
    """Lowercase, 0x-prefixed 40-hex-digit form of an address.

    Raises MalformedAddress for anything that cannot be canonicalized.
    Equality and hashing throughout the codebase are on this form only.
    """
    if not isinstance(value, str):
        raise MalformedAddress(f"address must be a string, got {type(value).__name__}")
    text = value.strip().lower()
    if not text.startswith("0x"):
        text = "0x" + text
    if not _ADDRESS_RE.match(text):
        raise MalformedAddress(f"not a 20-byte hex address: {value!r}")
    return text


def canonical_hash(value: str) -> str:
    """Lowercase 0x-prefixed 32-byte hash; synthetic ids shorter than 64 digits are left-padded."""
    text = value.strip().lower()
    if text.startswith("0x"):
        text = text[2:]
    if not re.fullmatch(r"[0-9a-f]{1,64}", text or ""):
        raise MalformedAddress(f"not a hex transaction id: {value!r}")
    return "0x" + text.rjust(64, "0")


def address_tag(addr: str) -> str:
    """Short display form (last four hex digits), mirroring explorer habits."""
    return addr[-4:]


class AddressKind(str, Enum):
    EOA = "eoa"
    CONTRACT = "contract"
    UNKNOWN = "unknown"


class TransferKind(str, Enum):
    NORMAL = "normal"      # sent from an EOA
    INTERNAL = "internal"  # sent from a contract account; carries no gas fee


class EventKind(str, Enum):
    MINT = "mint"
    BURN = "burn"
    SWAP = "swap"
    LP_TRANSFER = "lp_transfer"


class NativeSide(str, Enum):
    TOKEN0 = "token0"
    TOKEN1 = "token1"
    NONE = "none"


@dataclass(frozen=True, slots=True)
class NativeTransfer:
    """One native-asset movement between two addresses.

    ``gas_fee`` is gas_used x gas_price in wei and is zero for internal
    transfers. Zero-value rows are legal and carry the gas of transactions
    whose value moved through a pool leg instead (see PoolEventRecord).
    """

    tx_hash: str
    block: int
    timestamp: int
    sender: str
    receiver: str
    value: int
    gas_fee: int = 0
    kind: TransferKind = TransferKind.NORMAL
    log_index: int = 0

    def dedup_key(self) -> tuple:
        return (self.tx_hash, self.log_index, self.sender, self.receiver,
                self.value, self.kind.value)


@dataclass(frozen=True, slots=True)
class ExchangePool:
    """A UniswapV2-style pair contract."""

    address: str
    token0: str
    token1: str
    native_side: NativeSide
    creator: str
    created_at: int
    truncated: bool = False  # event download hit the per-pool cap

    @property
    def is_native(self) -> bool:
        return self.native_side is not NativeSide.NONE

    @property
    def scam_token(self) -> Optional[str]:
        """The non-native (lower-value) token, None for non-native pools."""
        if self.native_side is NativeSide.TOKEN0:
            return self.token1
        if self.native_side is NativeSide.TOKEN1:
            return self.token0
        return None


@dataclass(frozen=True, slots=True)
class PoolEventRecord:
    """A decoded Mint/Burn/Swap/LP-Transfer log of one pool.

    ``amount_native`` is signed for swaps: positive means the actor paid
    native into the pool (swap-in), negative means the actor received
    native from the pool (swap-out). Mint and burn store the unsigned
    native leg.
    """

    pool: str
    kind: EventKind
    block: int
    log_index: int
    timestamp: int
    actor: str
    tx_hash: str
    counterparty: Optional[str] = None  # LP-token receiver for lp_transfer
    amount_native: int = 0
    amount_token: int = 0
    lp_amount: int = 0

    def order_key(self) -> tuple[int, int]:
        return (self.block, self.log_index)

    def dedup_key(self) -> tuple:
        return (self.pool, self.tx_hash, self.log_index, self.kind.value)


@dataclass(frozen=True, slots=True)
class TokenContract:
    """Token contract metadata; ``source_code`` is empty when unverified."""

    address: str
    creator: str
    created_at: int = 0
    verified: bool = False
    source_code: str = ""


@dataclass(slots=True)
class AddressIndex:
    """Per-address view over the snapshot's sorted transfer and event lists.

    ``first_scam_start``/``last_scam_end`` are the first liquidity add and
    last liquidity removal across the address's scam pools; they stay None
    until a rug-pull scan attaches a timeline.
    """

    address: str
    in_transfers: tuple[NativeTransfer, ...] = ()
    out_transfers: tuple[NativeTransfer, ...] = ()
    pool_events: tuple[PoolEventRecord, ...] = ()
    first_scam_start: Optional[int] = None
    last_scam_end: Optional[int] = None


def _time_key(t: NativeTransfer) -> tuple:
    return (t.timestamp, t.block, t.log_index, t.tx_hash)


def funding_order_key(t: NativeTransfer) -> tuple:
    """Sort key for "largest transfer" selection: value descending, then
    earlier timestamp, then lower log index, then tx hash for full determinism."""
    return (-t.value, t.timestamp, t.log_index, t.tx_hash)


class DatasetSnapshot:
    """Deduplicated, fully indexed, write-once view of one dataset.

    Built via :func:`build_snapshot`; treat all attributes as read-only.
    Safe for unlimited concurrent readers.
    """

    def __init__(
        self,
        transfers: tuple[NativeTransfer, ...],
        events: tuple[PoolEventRecord, ...],
        pools: Mapping[str, ExchangePool],
        contracts: Mapping[str, TokenContract],
        chain_id: int,
        wrapped_native: Optional[str],
    ):
        self.transfers = transfers
        self.events = events
        self.pools = dict(pools)
        self.contracts = dict(contracts)
        self.chain_id = chain_id
        self.wrapped_native = wrapped_native

        self._in_by_addr: dict[str, list[NativeTransfer]] = {}
        self._out_by_addr: dict[str, list[NativeTransfer]] = {}
        self._events_by_pool: dict[str, list[PoolEventRecord]] = {}
        self._events_by_actor: dict[str, list[PoolEventRecord]] = {}
        self._pools_by_token: dict[str, list[str]] = {}
        self._gas_by_tx: dict[str, int] = {}

        for t in transfers:
            self._in_by_addr.setdefault(t.receiver, []).append(t)
            self._out_by_addr.setdefault(t.sender, []).append(t)
            if t.gas_fee:
                self._gas_by_tx[t.tx_hash] = self._gas_by_tx.get(t.tx_hash, 0) + t.gas_fee
        for rows in self._in_by_addr.values():
            rows.sort(key=_time_key)
        for rows in self._out_by_addr.values():
            rows.sort(key=_time_key)

        for e in events:
            self._events_by_pool.setdefault(e.pool, []).append(e)
            self._events_by_actor.setdefault(e.actor, []).append(e)
        for rows in self._events_by_pool.values():
            rows.sort(key=PoolEventRecord.order_key)
        for rows in self._events_by_actor.values():
            rows.sort(key=PoolEventRecord.order_key)

        for pool in self.pools.values():
            self._pools_by_token.setdefault(pool.token0, []).append(pool.address)
            self._pools_by_token.setdefault(pool.token1, []).append(pool.address)

        contract_like = set(self.pools) | set(self.contracts)
        if wrapped_native:
            contract_like.add(wrapped_native)
        self._contract_like = contract_like

    # -- address-level views -------------------------------------------------

    def index(self, addr: str) -> AddressIndex:
        return AddressIndex(
            address=addr,
            in_transfers=tuple(self._in_by_addr.get(addr, ())),
            out_transfers=tuple(self._out_by_addr.get(addr, ())),
            pool_events=tuple(self._events_by_actor.get(addr, ())),
        )

    def transfers_of(self, addr: str, direction: str) -> Sequence[NativeTransfer]:
        """All transfers of ``addr`` in time order; direction is 'in' or 'out'."""
        table = self._in_by_addr if direction == "in" else self._out_by_addr
        return table.get(addr, [])

    def transfers_before(self, addr: str, t: int, direction: str) -> list[NativeTransfer]:
        """Transfers strictly earlier than ``t``, in funding order
        (value descending, then earlier first). Absent addresses yield []."""
        rows = self.transfers_of(addr, direction)
        cut = bisect_left(rows, (t,), key=lambda r: (r.timestamp,))
        return sorted(rows[:cut], key=funding_order_key)

    def transfers_after(self, addr: str, t: int, direction: str) -> list[NativeTransfer]:
        """Transfers strictly later than ``t``, in funding order."""
        rows = self.transfers_of(addr, direction)
        cut = bisect_right(rows, (t,), key=lambda r: (r.timestamp,))
        return sorted(rows[cut:], key=funding_order_key)

    def pool_events_of(self, pool: str) -> Sequence[PoolEventRecord]:
        return self._events_by_pool.get(pool, [])

    def events_by_actor(self, addr: str) -> Sequence[PoolEventRecord]:
        return self._events_by_actor.get(addr, [])

    def pools_of_token(self, token: str) -> Sequence[str]:
        return self._pools_by_token.get(token, [])

    def gas_fee_of_tx(self, tx_hash: str) -> int:
        return self._gas_by_tx.get(tx_hash, 0)

    def kind_of(self, addr: str) -> AddressKind:
        """Contract for known pools/tokens/wrapped-native, unknown otherwise.

        Rules that need "EOA" treat every non-contract address as one; the
        chain offers no negative proof of contract-ness in this model.
        """
        if addr in self._contract_like:
            return AddressKind.CONTRACT
        return AddressKind.UNKNOWN

    def is_contract(self, addr: str) -> bool:
        return self.kind_of(addr) is AddressKind.CONTRACT

    def tx_count(self, addr: str) -> int:
        """Transfer rows plus pool events touching the address (big-node rule)."""
        return (
            len(self._in_by_addr.get(addr, ()))
            + len(self._out_by_addr.get(addr, ()))
            + len(self._events_by_actor.get(addr, ()))
        )

    def has_activity(self, addr: str) -> bool:
        return bool(
            self._in_by_addr.get(addr)
            or self._out_by_addr.get(addr)
            or self._events_by_actor.get(addr)
        )

    def neighbors(self, addr: str) -> set[str]:
        """Transfer counterparties in either direction."""
        out = {t.receiver for t in self._out_by_addr.get(addr, ())}
        out.update(t.sender for t in self._in_by_addr.get(addr, ()))
        out.discard(addr)
        return out

    # -- whole-dataset views ---------------------------------------------------

    def native_pools(self) -> list[ExchangePool]:
        return sorted(
            (p for p in self.pools.values() if p.is_native),
            key=lambda p: p.address,
        )

    def canonical_records(self) -> tuple:
        """Order-insensitive identity of the snapshot's contents."""
        return (
            tuple(sorted(self.transfers, key=lambda t: t.dedup_key())),
            tuple(sorted(self.events, key=lambda e: e.dedup_key())),
            tuple(sorted(self.pools.values(), key=lambda p: p.address)),
            tuple(sorted(self.contracts.values(), key=lambda c: c.address)),
            self.chain_id,
            self.wrapped_native,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DatasetSnapshot):
            return NotImplemented
        return self.canonical_records() == other.canonical_records()

    def __hash__(self) -> int:  # snapshots are compared, not keyed
        return hash((len(self.transfers), len(self.events), len(self.pools)))


def _canonical_transfer(t: NativeTransfer) -> NativeTransfer:
    return NativeTransfer(
        tx_hash=canonical_hash(t.tx_hash),
        block=int(t.block),
        timestamp=int(t.timestamp),
        sender=canonical_address(t.sender),
        receiver=canonical_address(t.receiver),
        value=int(t.value),
        gas_fee=int(t.gas_fee),
        kind=TransferKind(t.kind),
        log_index=int(t.log_index),
    )


def _canonical_event(e: PoolEventRecord) -> PoolEventRecord:
    return PoolEventRecord(
        pool=canonical_address(e.pool),
        kind=EventKind(e.kind),
        block=int(e.block),
        log_index=int(e.log_index),
        timestamp=int(e.timestamp),
        actor=canonical_address(e.actor),
        tx_hash=canonical_hash(e.tx_hash),
        counterparty=canonical_address(e.counterparty) if e.counterparty else None,
        amount_native=int(e.amount_native),
        amount_token=int(e.amount_token),
        lp_amount=int(e.lp_amount),
    )


def build_snapshot(
    transfers: Iterable[NativeTransfer],
    events: Iterable[PoolEventRecord],
    pools: Iterable[ExchangePool],
    contracts: Iterable[TokenContract] = (),
    chain_id: int = 1,
    wrapped_native: Optional[str] = None,
) -> DatasetSnapshot:
    """Validate, canonicalize, deduplicate, and index a dataset.

    Raises MalformedAddress, UnknownPoolReference, or NonMonotonicPoolEvents
    (the latter when one pool's input events go backwards in (block, log_index),
    which signals corrupted extraction rather than unordered input files).
    """
    pool_map: dict[str, ExchangePool] = {}
    for p in pools:
        addr = canonical_address(p.address)
        if addr in pool_map:
            continue
        pool_map[addr] = ExchangePool(
            address=addr,
            token0=canonical_address(p.token0),
            token1=canonical_address(p.token1),
            native_side=NativeSide(p.native_side),
            creator=canonical_address(p.creator),
            created_at=int(p.created_at),
            truncated=bool(p.truncated),
        )

    contract_map: dict[str, TokenContract] = {}
    for c in contracts:
        addr = canonical_address(c.address)
        if addr in contract_map:
            continue
        contract_map[addr] = TokenContract(
            address=addr,
            creator=canonical_address(c.creator),
            created_at=int(c.created_at),
            verified=bool(c.verified),
            source_code=c.source_code or "",
        )

    seen_transfers: set[tuple] = set()
    kept_transfers: list[NativeTransfer] = []
    for raw in transfers:
        t = _canonical_transfer(raw)
        key = t.dedup_key()
        if key in seen_transfers:
            continue
        seen_transfers.add(key)
        kept_transfers.append(t)

    seen_events: set[tuple] = set()
    last_key_by_pool: dict[str, tuple[int, int]] = {}
    kept_events: list[PoolEventRecord] = []
    for raw_e in events:
        e = _canonical_event(raw_e)
        key = e.dedup_key()
        if key in seen_events:
            continue
        seen_events.add(key)
        if e.pool not in pool_map:
            raise UnknownPoolReference(f"event references unknown pool {e.pool}")
        order = e.order_key()
        last = last_key_by_pool.get(e.pool)
        if last is not None and order < last:
            raise NonMonotonicPoolEvents(
                f"pool {e.pool}: event at {order} after {last}"
            )
        last_key_by_pool[e.pool] = order
        kept_events.append(e)

    wrapped = canonical_address(wrapped_native) if wrapped_native else None
    return DatasetSnapshot(
        transfers=tuple(kept_transfers),
        events=tuple(kept_events),
        pools=pool_map,
        contracts=contract_map,
        chain_id=int(chain_id),
        wrapped_native=wrapped,
    )
