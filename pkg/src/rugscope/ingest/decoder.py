"""UniswapV2 pair event decoding.

Topic hashes are derived from the event signatures at import time via the
package's own Keccak-256, so the constants can never drift from the
signatures they encode.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..errors import MalformedData
from ..ledger import (
    EventKind,
    ExchangePool,
    NativeSide,
    PoolEventRecord,
    canonical_address,
    canonical_hash,
)
from ..similarity.keccak import keccak256_hex

ZERO_ADDRESS = "0x" + "00" * 20

TOPIC_MINT = "0x" + keccak256_hex(b"Mint(address,uint256,uint256)")
TOPIC_BURN = "0x" + keccak256_hex(b"Burn(address,uint256,uint256,address)")
TOPIC_SWAP = "0x" + keccak256_hex(b"Swap(address,uint256,uint256,uint256,uint256,address)")
TOPIC_LP_TRANSFER = "0x" + keccak256_hex(b"Transfer(address,address,uint256)")

_DATA_WORDS = {
    TOPIC_MINT: 2,
    TOPIC_BURN: 2,
    TOPIC_SWAP: 4,
    TOPIC_LP_TRANSFER: 1,
}
_TOPIC_COUNT = {
    TOPIC_MINT: 2,
    TOPIC_BURN: 3,
    TOPIC_SWAP: 3,
    TOPIC_LP_TRANSFER: 3,
}


@dataclass(frozen=True, slots=True)
class RawEventLog:
    """An undecoded log entry as returned by a getLogs endpoint."""

    pool: str
    topics: tuple[str, ...]
    data: str  # 0x-prefixed hex
    block: int
    log_index: int
    tx_hash: str
    timestamp: int


@dataclass
class DecodeCounters:
    """Tallies kept by decode passes; unrecognized topics are not errors."""

    decoded: int = 0
    unrecognized: int = 0
    malformed: int = 0


def _data_words(data: str, expected: int) -> list[int]:
    body = data[2:] if data.startswith("0x") else data
    if len(body) != 64 * expected:
        raise MalformedData(
            f"expected {expected} data words, got {len(body) // 64} "
            f"({len(body)} hex chars)"
        )
    try:
        return [int(body[i:i + 64], 16) for i in range(0, len(body), 64)]
    except ValueError as exc:
        raise MalformedData(str(exc)) from None


def _topic_address(topic: str) -> str:
    body = topic[2:] if topic.startswith("0x") else topic
    if len(body) != 64:
        raise MalformedData(f"topic is not a 32-byte word: {topic!r}")
    return canonical_address("0x" + body[24:])


def decode_event(raw: RawEventLog, pool: ExchangePool) -> Optional[PoolEventRecord]:
    """Decode one log against the four UniswapV2 pair signatures.

    Returns None for an unrecognized topic0 (callers count and skip).
    Raises MalformedData when the data length does not match the ABI layout.
    Mint/burn actors and LP amounts are refined by :func:`decode_pool_logs`,
    which can see sibling logs of the same transaction.
    """
    if not raw.topics:
        return None
    topic0 = raw.topics[0].lower()
    if topic0 not in _DATA_WORDS:
        return None
    if len(raw.topics) != _TOPIC_COUNT[topic0]:
        raise MalformedData(
            f"expected {_TOPIC_COUNT[topic0]} topics for {topic0[:10]}, got {len(raw.topics)}"
        )
    words = _data_words(raw.data, _DATA_WORDS[topic0])
    native_first = pool.native_side is not NativeSide.TOKEN1

    common = dict(
        pool=pool.address,
        block=raw.block,
        log_index=raw.log_index,
        timestamp=raw.timestamp,
        tx_hash=canonical_hash(raw.tx_hash),
    )

    if topic0 == TOPIC_MINT:
        amount_native, amount_token = (words[0], words[1]) if native_first else (words[1], words[0])
        return PoolEventRecord(
            kind=EventKind.MINT,
            actor=_topic_address(raw.topics[1]),
            amount_native=amount_native if pool.is_native else 0,
            amount_token=amount_token,
            **common,
        )
    if topic0 == TOPIC_BURN:
        amount_native, amount_token = (words[0], words[1]) if native_first else (words[1], words[0])
        return PoolEventRecord(
            kind=EventKind.BURN,
            actor=_topic_address(raw.topics[2]),  # funds receiver; refined later
            amount_native=amount_native if pool.is_native else 0,
            amount_token=amount_token,
            **common,
        )
    if topic0 == TOPIC_SWAP:
        amount0_in, amount1_in, amount0_out, amount1_out = words
        if native_first:
            native_in, native_out = amount0_in, amount0_out
            token_in, token_out = amount1_in, amount1_out
        else:
            native_in, native_out = amount1_in, amount1_out
            token_in, token_out = amount0_in, amount0_out
        return PoolEventRecord(
            kind=EventKind.SWAP,
            actor=_topic_address(raw.topics[2]),
            amount_native=(native_in - native_out) if pool.is_native else 0,
            amount_token=token_out if native_in >= native_out else token_in,
            **common,
        )
    # LP-token Transfer
    return PoolEventRecord(
        kind=EventKind.LP_TRANSFER,
        actor=_topic_address(raw.topics[1]),
        counterparty=_topic_address(raw.topics[2]),
        lp_amount=words[0],
        **common,
    )


def decode_pool_logs(
    raws: Iterable[RawEventLog],
    pool: ExchangePool,
    counters: Optional[DecodeCounters] = None,
) -> list[PoolEventRecord]:
    """Decode all logs of one pool, resolving mint/burn actors and LP amounts
    through same-transaction LP transfers.

    A pair mints LP tokens with a Transfer from the zero address to the
    provider, and burns them with a Transfer from the pair to the zero
    address after the remover sent LP tokens in. The Mint/Burn logs name
    the router, so the real provider/remover comes from those transfers.
    """
    counters = counters if counters is not None else DecodeCounters()
    decoded: list[PoolEventRecord] = []
    for raw in raws:
        try:
            record = decode_event(raw, pool)
        except MalformedData:
            counters.malformed += 1
            continue
        if record is None:
            counters.unrecognized += 1
            continue
        counters.decoded += 1
        decoded.append(record)

    by_tx: dict[str, list[PoolEventRecord]] = {}
    for record in decoded:
        by_tx.setdefault(record.tx_hash, []).append(record)

    resolved: list[PoolEventRecord] = []
    for record in decoded:
        siblings = by_tx[record.tx_hash]
        if record.kind is EventKind.MINT:
            lp_mints = [
                s for s in siblings
                if s.kind is EventKind.LP_TRANSFER and s.actor == ZERO_ADDRESS
            ]
            if lp_mints:
                recipient = _follow_lp_chain(lp_mints[0].counterparty, siblings)
                record = _replace(record, actor=recipient, lp_amount=lp_mints[0].lp_amount)
        elif record.kind is EventKind.BURN:
            lp_into_pool = [
                s for s in siblings
                if s.kind is EventKind.LP_TRANSFER and s.counterparty == pool.address
            ]
            lp_burned = [
                s for s in siblings
                if s.kind is EventKind.LP_TRANSFER and s.counterparty == ZERO_ADDRESS
            ]
            actor = lp_into_pool[0].actor if lp_into_pool else record.actor
            lp_amount = lp_burned[0].lp_amount if lp_burned else record.lp_amount
            record = _replace(record, actor=actor, lp_amount=lp_amount)
        resolved.append(record)
    return resolved


def _follow_lp_chain(recipient: Optional[str], siblings: list[PoolEventRecord]) -> str:
    """Follow same-tx LP forwarding (pool mints to an intermediary that
    immediately passes the tokens on)."""
    current = recipient or ZERO_ADDRESS
    seen = {current}
    while True:
        hops = [
            s for s in siblings
            if s.kind is EventKind.LP_TRANSFER and s.actor == current
            and s.counterparty and s.counterparty not in seen
        ]
        if not hops:
            return current
        current = hops[0].counterparty
        seen.add(current)


def _replace(record: PoolEventRecord, **changes) -> PoolEventRecord:
    import dataclasses

    return dataclasses.replace(record, **changes)
