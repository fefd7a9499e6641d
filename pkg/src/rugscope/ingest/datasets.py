"""Line-delimited dataset files: one entity per file, integers as decimal strings.

Layout of a dataset directory:
    manifest.json    {"schema_version": 1, "chain_id": ..., "wrapped_native_address": ...}
    transfers.jsonl
    events.jsonl
    pools.jsonl
    contracts.jsonl

Files are written in canonical record order so that save(load(dir)) is
byte-identical to the original canonical save.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from ..errors import CorruptLine, SchemaVersionMismatch
from ..ledger import (
    DatasetSnapshot,
    EventKind,
    ExchangePool,
    NativeSide,
    NativeTransfer,
    PoolEventRecord,
    TokenContract,
    TransferKind,
    build_snapshot,
)

SCHEMA_VERSION = 1

MANIFEST_FILE = "manifest.json"
TRANSFERS_FILE = "transfers.jsonl"
EVENTS_FILE = "events.jsonl"
POOLS_FILE = "pools.jsonl"
CONTRACTS_FILE = "contracts.jsonl"


@dataclass
class LoadedDataset:
    transfers: list[NativeTransfer]
    events: list[PoolEventRecord]
    pools: list[ExchangePool]
    contracts: list[TokenContract]
    chain_id: int
    wrapped_native: Optional[str]
    skipped_lines: int = 0

    def to_snapshot(self) -> DatasetSnapshot:
        return build_snapshot(
            self.transfers, self.events, self.pools, self.contracts,
            chain_id=self.chain_id, wrapped_native=self.wrapped_native,
        )


def _transfer_row(t: NativeTransfer) -> dict:
    return {
        "tx_hash": t.tx_hash,
        "block": t.block,
        "timestamp": t.timestamp,
        "sender": t.sender,
        "receiver": t.receiver,
        "value": str(t.value),
        "gas_fee": str(t.gas_fee),
        "kind": t.kind.value,
        "log_index": t.log_index,
    }


def _row_transfer(row: dict) -> NativeTransfer:
    return NativeTransfer(
        tx_hash=row["tx_hash"],
        block=int(row["block"]),
        timestamp=int(row["timestamp"]),
        sender=row["sender"],
        receiver=row["receiver"],
        value=int(row["value"]),
        gas_fee=int(row["gas_fee"]),
        kind=TransferKind(row["kind"]),
        log_index=int(row["log_index"]),
    )


def _event_row(e: PoolEventRecord) -> dict:
    return {
        "pool": e.pool,
        "kind": e.kind.value,
        "block": e.block,
        "log_index": e.log_index,
        "timestamp": e.timestamp,
        "actor": e.actor,
        "counterparty": e.counterparty,
        "amount_native": str(e.amount_native),
        "amount_token": str(e.amount_token),
        "lp_amount": str(e.lp_amount),
        "tx_hash": e.tx_hash,
    }


def _row_event(row: dict) -> PoolEventRecord:
    return PoolEventRecord(
        pool=row["pool"],
        kind=EventKind(row["kind"]),
        block=int(row["block"]),
        log_index=int(row["log_index"]),
        timestamp=int(row["timestamp"]),
        actor=row["actor"],
        counterparty=row.get("counterparty"),
        amount_native=int(row["amount_native"]),
        amount_token=int(row["amount_token"]),
        lp_amount=int(row["lp_amount"]),
        tx_hash=row["tx_hash"],
    )


def _pool_row(p: ExchangePool) -> dict:
    return {
        "address": p.address,
        "token0": p.token0,
        "token1": p.token1,
        "native_side": p.native_side.value,
        "creator": p.creator,
        "created_at": p.created_at,
        "truncated": p.truncated,
    }


def _row_pool(row: dict) -> ExchangePool:
    return ExchangePool(
        address=row["address"],
        token0=row["token0"],
        token1=row["token1"],
        native_side=NativeSide(row["native_side"]),
        creator=row["creator"],
        created_at=int(row["created_at"]),
        truncated=bool(row.get("truncated", False)),
    )


def _contract_row(c: TokenContract) -> dict:
    return {
        "address": c.address,
        "creator": c.creator,
        "created_at": c.created_at,
        "verified": c.verified,
        "source_code": c.source_code,
    }


def _row_contract(row: dict) -> TokenContract:
    return TokenContract(
        address=row["address"],
        creator=row["creator"],
        created_at=int(row.get("created_at", 0)),
        verified=bool(row["verified"]),
        source_code=row.get("source_code", ""),
    )


def _dump_lines(path: Path, rows: Iterable[dict]) -> None:
    with path.open("w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True, separators=(",", ":")))
            fh.write("\n")


def save_dataset(
    path: str | Path,
    transfers: Iterable[NativeTransfer],
    events: Iterable[PoolEventRecord],
    pools: Iterable[ExchangePool],
    contracts: Iterable[TokenContract] = (),
    chain_id: int = 1,
    wrapped_native: Optional[str] = None,
) -> Path:
    """Write a dataset directory in canonical order; returns the directory."""
    directory = Path(path)
    directory.mkdir(parents=True, exist_ok=True)

    manifest = {
        "schema_version": SCHEMA_VERSION,
        "chain_id": chain_id,
        "wrapped_native_address": wrapped_native,
    }
    (directory / MANIFEST_FILE).write_text(
        json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )

    _dump_lines(
        directory / TRANSFERS_FILE,
        (_transfer_row(t) for t in sorted(transfers, key=lambda t: t.dedup_key())),
    )
    _dump_lines(
        directory / EVENTS_FILE,
        (_event_row(e) for e in sorted(events, key=lambda e: (e.pool, e.block, e.log_index, e.tx_hash))),
    )
    _dump_lines(
        directory / POOLS_FILE,
        (_pool_row(p) for p in sorted(pools, key=lambda p: p.address)),
    )
    _dump_lines(
        directory / CONTRACTS_FILE,
        (_contract_row(c) for c in sorted(contracts, key=lambda c: c.address)),
    )
    return directory


def save_snapshot(path: str | Path, snapshot: DatasetSnapshot) -> Path:
    return save_dataset(
        path,
        snapshot.transfers,
        snapshot.events,
        snapshot.pools.values(),
        snapshot.contracts.values(),
        chain_id=snapshot.chain_id,
        wrapped_native=snapshot.wrapped_native,
    )


def _load_lines(path: Path, parse, strict: bool) -> tuple[list, int]:
    rows: list = []
    skipped = 0
    if not path.exists():
        return rows, skipped
    with path.open("r", encoding="utf-8") as fh:
        for line_number, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append(parse(json.loads(line)))
            except (ValueError, KeyError, TypeError) as exc:
                if strict:
                    raise CorruptLine(str(path), line_number, repr(exc)) from exc
                skipped += 1
    return rows, skipped


def load_dataset(path: str | Path, strict: bool = True) -> LoadedDataset:
    """Read a dataset directory.

    Strict mode aborts on the first corrupt line (CorruptLine, with the line
    number); lenient mode skips corrupt lines and counts them.
    Raises SchemaVersionMismatch for unknown schema versions.
    """
    directory = Path(path)
    manifest_path = directory / MANIFEST_FILE
    if not manifest_path.exists():
        raise FileNotFoundError(f"no {MANIFEST_FILE} in {directory}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    version = manifest.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionMismatch(
            f"dataset schema_version {version!r}, supported {SCHEMA_VERSION}"
        )

    skipped = 0
    transfers, s = _load_lines(directory / TRANSFERS_FILE, _row_transfer, strict)
    skipped += s
    events, s = _load_lines(directory / EVENTS_FILE, _row_event, strict)
    skipped += s
    pools, s = _load_lines(directory / POOLS_FILE, _row_pool, strict)
    skipped += s
    contracts, s = _load_lines(directory / CONTRACTS_FILE, _row_contract, strict)
    skipped += s

    return LoadedDataset(
        transfers=transfers,
        events=events,
        pools=pools,
        contracts=contracts,
        chain_id=int(manifest.get("chain_id", 1)),
        wrapped_native=manifest.get("wrapped_native_address"),
        skipped_lines=skipped,
    )


def load_snapshot(path: str | Path, strict: bool = True) -> DatasetSnapshot:
    return load_dataset(path, strict=strict).to_snapshot()
