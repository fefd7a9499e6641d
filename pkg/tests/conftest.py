"""Shared builders for hand-made ledger fixtures."""

from __future__ import annotations

import itertools

import pytest

from rugscope.ledger import (
    EventKind,
    ExchangePool,
    NativeSide,
    NativeTransfer,
    PoolEventRecord,
    TokenContract,
    TransferKind,
    build_snapshot,
)

ETH = 10**18

WETH = "0x" + "ee" * 20

_tx_counter = itertools.count(1)


def addr(tag: str) -> str:
    """Deterministic fake address from a short tag."""
    body = tag.lower().encode().hex()
    return "0x" + (body * 40)[:40]


def tx(n: int | None = None) -> str:
    if n is None:
        n = next(_tx_counter)
    return "0x" + format(n, "x").rjust(64, "0")


def mk_transfer(sender, receiver, value, *, ts, gas=0, kind="normal",
                block=None, log_index=0, tx_hash=None) -> NativeTransfer:
    return NativeTransfer(
        tx_hash=tx_hash or tx(),
        block=block if block is not None else ts,
        timestamp=ts,
        sender=sender,
        receiver=receiver,
        value=value,
        gas_fee=gas,
        kind=TransferKind(kind),
        log_index=log_index,
    )


def mk_pool(address, token, *, creator, created_at=0, native_side="token0",
            native=WETH) -> ExchangePool:
    side = NativeSide(native_side)
    if side is NativeSide.TOKEN0:
        token0, token1 = native, token
    elif side is NativeSide.TOKEN1:
        token0, token1 = token, native
    else:
        token0, token1 = token, addr("other-token")
    return ExchangePool(
        address=address,
        token0=token0,
        token1=token1,
        native_side=side,
        creator=creator,
        created_at=created_at,
    )


def mk_event(pool, kind, *, ts, actor, amount_native=0, amount_token=0,
             lp_amount=0, block=None, log_index=0, tx_hash=None,
             counterparty=None) -> PoolEventRecord:
    return PoolEventRecord(
        pool=pool,
        kind=EventKind(kind),
        block=block if block is not None else ts,
        log_index=log_index,
        timestamp=ts,
        actor=actor,
        tx_hash=tx_hash or tx(),
        counterparty=counterparty,
        amount_native=amount_native,
        amount_token=amount_token,
        lp_amount=lp_amount,
    )


def mk_contract(address, creator, *, verified=False, source="") -> TokenContract:
    return TokenContract(
        address=address,
        creator=creator,
        verified=verified,
        source_code=source,
    )


@pytest.fixture
def empty_snapshot():
    return build_snapshot([], [], [], wrapped_native=WETH)


class LedgerBuilder:
    """Hand-made ledger fixtures: scam pools with their command transactions,
    plus arbitrary funding transfers."""

    def __init__(self):
        self.transfers = []
        self.events = []
        self.pools = []
        self.contracts = []
        self._tx = itertools.count(500_000)

    def next_tx(self) -> str:
        return tx(next(self._tx))

    def transfer(self, sender, receiver, value, ts, *, gas=0, kind="normal",
                 log_index=0):
        t = mk_transfer(sender, receiver, value, ts=ts, gas=gas, kind=kind,
                        log_index=log_index, tx_hash=self.next_tx())
        self.transfers.append(t)
        return t

    def scam_pool(self, owner, tag, *, t_mint, t_burn, liquidity, payout,
                  gas=0, minted=10**18, burned=None, token_creator=None):
        """One-mint-one-burn native pool run by ``owner``.

        Emits the token/pool creation rows and zero-value command rows so
        gas is attributable per transaction, the way chain extracts look.
        """
        pool_addr = addr("pool-" + tag)
        token_addr = addr("tok-" + tag)
        creator = token_creator or owner
        self.pools.append(mk_pool(pool_addr, token_addr, creator=owner,
                                  created_at=t_mint - 20))
        self.contracts.append(TokenContract(address=token_addr, creator=creator))
        # creation transactions (zero value, gas only)
        self.transfers.append(mk_transfer(creator, token_addr, 0, ts=t_mint - 30,
                                          gas=gas, tx_hash=self.next_tx()))
        self.transfers.append(mk_transfer(owner, pool_addr, 0, ts=t_mint - 20,
                                          gas=gas, tx_hash=self.next_tx()))
        mint_tx = self.next_tx()
        self.events.append(mk_event(pool_addr, "mint", ts=t_mint, actor=owner,
                                    amount_native=liquidity, lp_amount=minted,
                                    tx_hash=mint_tx))
        self.transfers.append(mk_transfer(owner, pool_addr, 0, ts=t_mint,
                                          gas=gas, tx_hash=mint_tx))
        burn_tx = self.next_tx()
        self.events.append(mk_event(pool_addr, "burn", ts=t_burn, actor=owner,
                                    amount_native=payout,
                                    lp_amount=minted if burned is None else burned,
                                    tx_hash=burn_tx))
        self.transfers.append(mk_transfer(owner, pool_addr, 0, ts=t_burn,
                                          gas=gas, tx_hash=burn_tx))
        return pool_addr

    def swap(self, pool_addr, actor, amount_native, ts, *, gas=0, amount_token=0,
             log_index=1):
        swap_tx = self.next_tx()
        self.events.append(mk_event(pool_addr, "swap", ts=ts, actor=actor,
                                    amount_native=amount_native,
                                    amount_token=amount_token,
                                    log_index=log_index, tx_hash=swap_tx))
        if amount_native > 0 or gas:
            self.transfers.append(mk_transfer(actor, pool_addr, 0, ts=ts, gas=gas,
                                              tx_hash=swap_tx))
        return swap_tx

    def snapshot(self):
        events = sorted(self.events, key=lambda e: (e.pool, e.block, e.log_index))
        return build_snapshot(self.transfers, events, self.pools,
                              self.contracts, wrapped_native=WETH)
