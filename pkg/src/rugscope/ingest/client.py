"""Etherscan-compatible API client with rate limiting, retries, and a
recorded-transcript mock transport.

Tests never hit live endpoints: every fetcher goes through a Transport,
and MockTransport replays scripted responses while recording request
timestamps so rate-limit behaviour can be asserted.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Protocol

from ..errors import InconsistentResponse, RateLimitedError, TransportError
from ..ledger import (
    ExchangePool,
    NativeSide,
    NativeTransfer,
    TokenContract,
    TransferKind,
    canonical_address,
)
from ..similarity.keccak import keccak256
from .decoder import RawEventLog

SELECTOR_ALL_PAIRS = keccak256(b"allPairs(uint256)")[:4].hex()
SELECTOR_ALL_PAIRS_LENGTH = keccak256(b"allPairsLength()")[:4].hex()
SELECTOR_TOKEN0 = keccak256(b"token0()")[:4].hex()
SELECTOR_TOKEN1 = keccak256(b"token1()")[:4].hex()


@dataclass
class ApiClientConfig:
    base_url: str = "https://api.etherscan.io/api"
    api_key: str = ""
    max_requests_per_second: float = 5.0
    max_events_per_pool: int = 1000
    max_attempts: int = 3
    backoff_seconds: float = 0.5
    timeout_seconds: float = 30.0
    wrapped_native: str = ""
    chain_id: int = 1

    def __post_init__(self):
        if self.max_events_per_pool < 1:
            raise ValueError("max_events_per_pool must be >= 1")
        if self.max_requests_per_second <= 0:
            raise ValueError("max_requests_per_second must be positive")


class Transport(Protocol):
    def request(self, params: dict) -> Any: ...


class HttpTransport:
    """requests-backed transport; translated into rugscope error types."""

    def __init__(self, base_url: str, timeout: float = 30.0):
        import requests

        self.base_url = base_url
        self.timeout = timeout
        self._session = requests.Session()

    def request(self, params: dict) -> Any:
        import requests

        try:
            response = self._session.get(self.base_url, params=params, timeout=self.timeout)
        except requests.RequestException as exc:
            raise TransportError(str(exc)) from exc
        if response.status_code == 429:
            raise RateLimitedError("HTTP 429")
        if response.status_code >= 500:
            raise TransportError(f"HTTP {response.status_code}")
        try:
            return response.json()
        except ValueError as exc:
            raise TransportError(f"non-JSON response: {exc}") from exc


class MockTransport:
    """Replays a scripted transcript and records request times.

    Each transcript entry is either a response payload or an Exception
    instance to raise. A callable entry receives the params and returns
    the payload (or raises).
    """

    def __init__(self, transcript: list, clock: Callable[[], float] = time.monotonic):
        self.transcript = list(transcript)
        self.clock = clock
        self.calls: list[tuple[float, dict]] = []

    def request(self, params: dict) -> Any:
        self.calls.append((self.clock(), dict(params)))
        if not self.transcript:
            raise AssertionError(f"transcript exhausted; unexpected request {params}")
        entry = self.transcript.pop(0)
        if callable(entry):
            entry = entry(params)
        if isinstance(entry, Exception):
            raise entry
        return entry


class RateLimiter:
    """Spaces calls at least 1/rps apart on the injected clock."""

    def __init__(
        self,
        max_requests_per_second: float,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.min_interval = 1.0 / max_requests_per_second
        self.clock = clock
        self.sleep = sleep
        self._last: Optional[float] = None

    def wait(self) -> None:
        now = self.clock()
        if self._last is not None:
            remaining = self._last + self.min_interval - now
            if remaining > 0:
                self.sleep(remaining)
                now = self.clock()
        self._last = now


class EtherscanClient:
    """Fetchers for pools, transfers, event logs, and contract sources.

    All calls share one rate limiter; transient failures are retried with
    exponential backoff up to config.max_attempts.
    """

    def __init__(
        self,
        config: ApiClientConfig,
        transport: Optional[Transport] = None,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.config = config
        self.transport = transport or HttpTransport(config.base_url, config.timeout_seconds)
        self._sleep = sleep
        self.limiter = RateLimiter(config.max_requests_per_second, clock, sleep)

    # -- plumbing -----------------------------------------------------------

    def _call(self, params: dict) -> Any:
        params = dict(params)
        if self.config.api_key:
            params["apikey"] = self.config.api_key
        last_error: Optional[Exception] = None
        for attempt in range(self.config.max_attempts):
            if attempt:
                self._sleep(self.config.backoff_seconds * (2 ** (attempt - 1)))
            self.limiter.wait()
            try:
                payload = self.transport.request(params)
            except RateLimitedError as exc:
                last_error = exc
                continue
            except TransportError as exc:
                last_error = exc
                continue
            if isinstance(payload, dict) and payload.get("status") == "0":
                message = str(payload.get("result") or payload.get("message") or "")
                if "rate limit" in message.lower():
                    last_error = RateLimitedError(message)
                    continue
                # "No transactions found" and friends: empty result, not an error.
                return payload.get("result") if isinstance(payload.get("result"), list) else []
            if isinstance(payload, dict) and "result" in payload:
                return payload["result"]
            return payload
        raise last_error or TransportError("request failed")

    def _eth_call(self, to: str, data: str) -> str:
        result = self._call({
            "module": "proxy",
            "action": "eth_call",
            "to": to,
            "data": data,
            "tag": "latest",
        })
        if not isinstance(result, str) or not result.startswith("0x"):
            raise InconsistentResponse(f"eth_call to {to} returned {result!r}")
        return result

    @staticmethod
    def _word_address(word: str) -> str:
        body = word[2:] if word.startswith("0x") else word
        if len(body) < 40:
            raise InconsistentResponse(f"short address word: {word!r}")
        return canonical_address("0x" + body[-40:])

    # -- fetchers -------------------------------------------------------------

    def fetch_pool_count(self, factory: str) -> int:
        word = self._eth_call(factory, "0x" + SELECTOR_ALL_PAIRS_LENGTH)
        return int(word, 16)

    def fetch_pools(self, factory: str, start: int, end: int) -> list[ExchangePool]:
        """Pools at factory indexes [start, end), with tokens and creator resolved."""
        pools: list[ExchangePool] = []
        wrapped = canonical_address(self.config.wrapped_native) if self.config.wrapped_native else None
        for i in range(start, end):
            index_word = format(i, "x").rjust(64, "0")
            pair_word = self._eth_call(factory, "0x" + SELECTOR_ALL_PAIRS + index_word)
            pair = self._word_address(pair_word)
            token0 = self._word_address(self._eth_call(pair, "0x" + SELECTOR_TOKEN0))
            token1 = self._word_address(self._eth_call(pair, "0x" + SELECTOR_TOKEN1))
            creator, created_at = self._fetch_creation(pair)
            if token0 == wrapped:
                side = NativeSide.TOKEN0
            elif token1 == wrapped:
                side = NativeSide.TOKEN1
            else:
                side = NativeSide.NONE
            pools.append(ExchangePool(
                address=pair,
                token0=token0,
                token1=token1,
                native_side=side,
                creator=creator,
                created_at=created_at,
            ))
        return pools

    def _fetch_creation(self, contract: str) -> tuple[str, int]:
        rows = self._call({
            "module": "contract",
            "action": "getcontractcreation",
            "contractaddresses": contract,
        })
        if not rows:
            raise InconsistentResponse(f"no creation info for {contract}")
        row = rows[0]
        creator = row.get("contractCreator")
        if not creator:
            raise InconsistentResponse(f"creation info for {contract} omits creator")
        return canonical_address(creator), int(row.get("timestamp", 0))

    def fetch_transfers(self, address: str, internal: bool = False) -> list[NativeTransfer]:
        rows = self._call({
            "module": "account",
            "action": "txlistinternal" if internal else "txlist",
            "address": address,
            "startblock": 0,
            "endblock": 999_999_999,
            "sort": "asc",
        })
        transfers: list[NativeTransfer] = []
        for idx, row in enumerate(rows or []):
            receiver = row.get("to") or row.get("contractAddress")
            if not receiver:
                continue
            gas = 0
            if not internal:
                gas = int(row.get("gasUsed", 0)) * int(row.get("gasPrice", 0))
            transfers.append(NativeTransfer(
                tx_hash=row["hash"],
                block=int(row["blockNumber"]),
                timestamp=int(row["timeStamp"]),
                sender=row["from"],
                receiver=receiver,
                value=int(row["value"]),
                gas_fee=gas,
                kind=TransferKind.INTERNAL if internal else TransferKind.NORMAL,
                log_index=idx if internal else 0,
            ))
        return transfers

    def fetch_logs(self, pool: str) -> tuple[list[RawEventLog], bool]:
        """First max_events_per_pool logs of a pool; second value reports truncation."""
        cap = self.config.max_events_per_pool
        page_size = min(1000, cap)
        logs: list[RawEventLog] = []
        page = 1
        truncated = False
        while len(logs) < cap:
            rows = self._call({
                "module": "logs",
                "action": "getLogs",
                "address": pool,
                "fromBlock": 0,
                "toBlock": "latest",
                "page": page,
                "offset": page_size,
            })
            if not rows:
                break
            for row in rows:
                if len(logs) >= cap:
                    truncated = True
                    break
                logs.append(RawEventLog(
                    pool=pool,
                    topics=tuple(row["topics"]),
                    data=row.get("data", "0x"),
                    block=int(row["blockNumber"], 0) if isinstance(row["blockNumber"], str)
                    else int(row["blockNumber"]),
                    log_index=_hex_or_int(row.get("logIndex", 0)),
                    tx_hash=row["transactionHash"],
                    timestamp=_hex_or_int(row.get("timeStamp", 0)),
                ))
            if len(rows) < page_size:
                break
            page += 1
        return logs, truncated

    def fetch_source(self, token: str) -> TokenContract:
        rows = self._call({
            "module": "contract",
            "action": "getsourcecode",
            "address": token,
        })
        source = ""
        if rows:
            source = rows[0].get("SourceCode") or ""
        creator, created_at = self._fetch_creation(token)
        return TokenContract(
            address=canonical_address(token),
            creator=creator,
            created_at=created_at,
            verified=bool(source.strip()),
            source_code=source,
        )


def _hex_or_int(value) -> int:
    if isinstance(value, str):
        return int(value, 0) if value not in ("", "0x") else 0
    return int(value)
