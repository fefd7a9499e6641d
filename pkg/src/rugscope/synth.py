"""Synthetic ledgers with planted ground truth.

Every planted structure satisfies its defining predicate by construction,
and the plants are engineered not to leak into each other: chain links
stay below the beneficiary-coverage threshold so chains never double as
flows, flow senders get a pre-scam decoy out-transfer so flow edges never
form max-in-max-out links, star centers are fresh non-scammer addresses
(scammer centers only on request), and noise traffic uses its own address
space plus sub-threshold dust.

All randomness flows from the spec seed; identical specs produce
byte-identical datasets.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, asdict
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .errors import InfeasibleSpec
from .ledger import (
    EventKind,
    ExchangePool,
    NativeSide,
    NativeTransfer,
    PoolEventRecord,
    TokenContract,
    TransferKind,
    build_snapshot,
    DatasetSnapshot,
)
from .patterns.funding import as_fraction

ETH = 10**18
WRAPPED_NATIVE = "0x" + "ee" * 20

_SLOT_SECONDS = 500_000


@dataclass
class PlantSpec:
    """What to plant; ranges are inclusive (lo, hi)."""

    seed: int = 0
    stars_in: int = 0
    stars_out: int = 0
    stars_in_out: int = 0
    star_size: tuple[int, int] = (5, 8)
    scammer_star_centers: bool = False
    chains: int = 0
    chain_length: tuple[int, int] = (2, 6)
    flows: int = 0
    flow_width: tuple[int, int] = (2, 5)
    clusters: int = 0
    cluster_size: tuple[int, int] = (2, 8)
    wash_pools: int = 0
    wash_traders_per_pool: tuple[int, int] = (1, 3)
    victims_per_wash_pool: tuple[int, int] = (0, 2)
    noise_addresses: int = 0
    benign_pools: int = 0
    dust_transfers: int = 0
    funding_eth: tuple[int, int] = (5, 20)
    p_compliance: float = 0.9
    gas_fee: int = 10**15  # fixed per transaction: hand-checkable arithmetic
    base_time: int = 1_600_000_000
    chain_id: int = 1

    def validate(self) -> None:
        if self.star_size[0] < 5:
            raise InfeasibleSpec("scam stars need at least 5 satellites")
        if self.chains and self.chain_length[0] < 2:
            raise InfeasibleSpec("a chain needs at least 2 addresses")
        if self.flows and self.flow_width[0] < 2:
            raise InfeasibleSpec("a flow needs at least 2 vertices")
        if self.clusters and self.cluster_size[0] < 2:
            raise InfeasibleSpec("a cluster needs at least 2 addresses")
        for lo, hi in (self.star_size, self.chain_length, self.flow_width,
                       self.cluster_size, self.funding_eth):
            if lo > hi:
                raise InfeasibleSpec(f"empty range ({lo}, {hi})")

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "PlantSpec":
        """Load from TOML or JSON, keyed by file extension."""
        text = Path(path).read_text(encoding="utf-8")
        if str(path).endswith(".json"):
            raw = json.loads(text)
        else:
            try:
                import tomllib  # py311+
            except ModuleNotFoundError:
                import tomli as tomllib
            raw = tomllib.loads(text)
        known = {f for f in cls.__dataclass_fields__}
        kwargs = {}
        for key, value in raw.items():
            if key not in known:
                raise InfeasibleSpec(f"unknown plant spec key {key!r}")
            kwargs[key] = tuple(value) if isinstance(value, list) else value
        return cls(**kwargs)


@dataclass(frozen=True)
class PlantedStar:
    kind: str  # in | out | in_out
    center: str
    satellites: frozenset[str]


@dataclass(frozen=True)
class PlantedChain:
    members: tuple[str, ...]


@dataclass(frozen=True)
class PlantedFlow:
    vertices: frozenset[str]
    width: int
    fund_in: int
    fund_out: int
    inputs: frozenset[str]
    outputs: frozenset[str]


@dataclass(frozen=True)
class PlantedWashPool:
    pool: str
    owner: str
    cluster_members: frozenset[str]
    liquidity: int
    payout: int
    own_swap_in: int
    wash_in_total: int
    wash_fee_total: int
    role_gas_total: int  # gas on the owner's pool-leg transactions

    @property
    def delta_naive(self) -> int:
        x = self.liquidity + self.own_swap_in + self.role_gas_total
        return self.payout - x

    @property
    def delta_cluster(self) -> int:
        return self.delta_naive - self.wash_in_total - self.wash_fee_total


@dataclass
class GroundTruth:
    scam_pools: dict[str, frozenset[str]] = field(default_factory=dict)  # pool -> roles
    scammers: set[str] = field(default_factory=set)
    stars: list[PlantedStar] = field(default_factory=list)
    chains: list[PlantedChain] = field(default_factory=list)
    flows: list[PlantedFlow] = field(default_factory=list)
    clusters: list[frozenset[str]] = field(default_factory=list)
    wash_pools: dict[str, PlantedWashPool] = field(default_factory=dict)
    noise_addresses: set[str] = field(default_factory=set)
    benign_pools: set[str] = field(default_factory=set)


@dataclass
class SynthDataset:
    transfers: list[NativeTransfer]
    events: list[PoolEventRecord]
    pools: list[ExchangePool]
    contracts: list[TokenContract]
    chain_id: int = 1
    wrapped_native: str = WRAPPED_NATIVE

    def to_snapshot(self) -> DatasetSnapshot:
        events = sorted(self.events, key=lambda e: (e.pool, e.block, e.log_index))
        return build_snapshot(self.transfers, events, self.pools, self.contracts,
                              chain_id=self.chain_id,
                              wrapped_native=self.wrapped_native)


class _Writer:
    """Record accumulator with deterministic addresses, tx ids, and clock."""

    _PREFIX = {
        "scammer": "5c", "center": "ce", "external": "ef", "sink": "51",
        "noise": "b0", "washer": "3a", "victim": "1c", "decoy": "dd",
        "token": "70", "pool": "90", "attacker": "aa", "coordinator": "c0",
    }

    def __init__(self, spec: PlantSpec):
        self.spec = spec
        self.transfers: list[NativeTransfer] = []
        self.events: list[PoolEventRecord] = []
        self.pools: list[ExchangePool] = []
        self.contracts: list[TokenContract] = []
        self._counters: dict[str, int] = {}
        self._tx = 0
        self._slot = 0

    def address(self, category: str) -> str:
        prefix = self._PREFIX[category]
        n = self._counters.get(category, 0)
        self._counters[category] = n + 1
        return "0x" + prefix + format(n, "x").rjust(38, "0")

    def tx(self) -> str:
        self._tx += 1
        return "0x" + format(self._tx, "x").rjust(64, "0")

    def slot(self) -> int:
        """Start timestamp of a fresh non-overlapping time window."""
        self._slot += 1
        return self.spec.base_time + self._slot * _SLOT_SECONDS

    def transfer(self, sender: str, receiver: str, value: int, ts: int,
                 gas: Optional[int] = None,
                 kind: TransferKind = TransferKind.NORMAL) -> NativeTransfer:
        t = NativeTransfer(
            tx_hash=self.tx(), block=ts, timestamp=ts, sender=sender,
            receiver=receiver, value=value,
            gas_fee=self.spec.gas_fee if gas is None else gas, kind=kind,
        )
        self.transfers.append(t)
        return t

    def scam_pool(self, owner: str, t_mint: int, t_burn: int,
                  liquidity: int, payout: int, *,
                  remover: Optional[str] = None,
                  token_creator: Optional[str] = None,
                  burn_ratio: tuple[int, int] = (1, 1)) -> str:
        """One-mint-one-burn native pool plus its setup transactions."""
        gas = self.spec.gas_fee
        token = self.address("token")
        pool = self.address("pool")
        creator = token_creator or owner
        remover = remover or owner
        self.contracts.append(TokenContract(address=token, creator=creator,
                                            created_at=t_mint - 30))
        self.pools.append(ExchangePool(
            address=pool, token0=WRAPPED_NATIVE, token1=token,
            native_side=NativeSide.TOKEN0, creator=owner, created_at=t_mint - 20,
        ))
        self.transfer(creator, token, 0, t_mint - 30, gas=gas)
        self.transfer(owner, pool, 0, t_mint - 20, gas=gas)
        minted = 10**18
        burned = minted * burn_ratio[0] // burn_ratio[1]
        mint_tx = self.tx()
        self.events.append(PoolEventRecord(
            pool=pool, kind=EventKind.MINT, block=t_mint, log_index=0,
            timestamp=t_mint, actor=owner, tx_hash=mint_tx,
            amount_native=liquidity, amount_token=250_000_000 * ETH,
            lp_amount=minted,
        ))
        self.transfers.append(NativeTransfer(
            tx_hash=mint_tx, block=t_mint, timestamp=t_mint, sender=owner,
            receiver=pool, value=0, gas_fee=gas, kind=TransferKind.NORMAL,
        ))
        burn_tx = self.tx()
        self.events.append(PoolEventRecord(
            pool=pool, kind=EventKind.BURN, block=t_burn, log_index=0,
            timestamp=t_burn, actor=remover, tx_hash=burn_tx,
            amount_native=payout, amount_token=241_000_000 * ETH,
            lp_amount=burned,
        ))
        self.transfers.append(NativeTransfer(
            tx_hash=burn_tx, block=t_burn, timestamp=t_burn, sender=remover,
            receiver=pool, value=0, gas_fee=gas, kind=TransferKind.NORMAL,
        ))
        return pool

    def swap(self, pool: str, actor: str, amount_native: int, ts: int,
             log_index: int = 1, gas: Optional[int] = None) -> None:
        swap_tx = self.tx()
        self.events.append(PoolEventRecord(
            pool=pool, kind=EventKind.SWAP, block=ts, log_index=log_index,
            timestamp=ts, actor=actor, tx_hash=swap_tx,
            amount_native=amount_native, amount_token=10**20,
        ))
        self.transfers.append(NativeTransfer(
            tx_hash=swap_tx, block=ts, timestamp=ts, sender=actor,
            receiver=pool, value=0,
            gas_fee=self.spec.gas_fee if gas is None else gas,
            kind=TransferKind.NORMAL,
        ))

    def pool_cost(self, liquidity: int) -> int:
        """Owner-side first-scam cost for a pool written by scam_pool."""
        return liquidity + 3 * self.spec.gas_fee

    def pool_revenue(self, payout: int) -> int:
        return payout - self.spec.gas_fee


def _pick_target_amount(total: int, smallest: int, share: Fraction) -> int:
    """The largest T with (total - smallest)*den < T*num <= total*den, so a
    greedy cover of share*T takes exactly the transfers summing to total."""
    num, den = share.numerator, share.denominator
    t = total * den // num
    if t * num <= (total - smallest) * den:
        raise InfeasibleSpec(
            f"cannot make all transfers necessary: total={total} smallest={smallest}"
        )
    return t


def generate(spec: PlantSpec) -> tuple[SynthDataset, GroundTruth]:
    """Build the dataset and its exact ground truth."""
    spec.validate()
    rng = random.Random(spec.seed)
    w = _Writer(spec)
    truth = GroundTruth()
    share = as_fraction(spec.p_compliance)

    for _ in range(spec.stars_in):
        _plant_star(w, rng, truth, "in", share)
    for _ in range(spec.stars_out):
        _plant_star(w, rng, truth, "out", share)
    for _ in range(spec.stars_in_out):
        _plant_star(w, rng, truth, "in_out", share)
    for _ in range(spec.chains):
        _plant_chain(w, rng, truth, share)
    for _ in range(spec.flows):
        _plant_flow(w, rng, truth, share)
    for _ in range(spec.clusters):
        _plant_cluster(w, rng, truth)
    for _ in range(spec.wash_pools):
        _plant_wash_pool(w, rng, truth)
    _plant_noise(w, rng, truth)

    dataset = SynthDataset(
        transfers=w.transfers, events=w.events, pools=w.pools,
        contracts=w.contracts, chain_id=spec.chain_id,
    )
    return dataset, truth


def _eth_range(rng: random.Random, spec: PlantSpec) -> int:
    return rng.randint(*spec.funding_eth) * ETH


def _register_pool(w: _Writer, truth: GroundTruth, pool: str, *roles: str) -> None:
    truth.scam_pools[pool] = frozenset(r for r in roles if r)
    truth.scammers.update(r for r in roles if r)


def _plant_star(w: _Writer, rng: random.Random, truth: GroundTruth,
                kind: str, share: Fraction) -> None:
    spec = w.spec
    n = rng.randint(*spec.star_size)
    center = w.address("center")
    t0 = w.slot()

    # Draw satellite economics up front so a scammer center's own pool can
    # be sized to keep its funding fan-out below any coverage threshold.
    plans = []
    for _ in range(n):
        liquidity = _eth_range(rng, spec)
        cost = w.pool_cost(liquidity)
        plans.append({
            "liquidity": liquidity,
            "funding": cost + rng.randint(0, ETH),
            "payout": liquidity + rng.randint(1, 3) * ETH // 2,
        })

    if spec.scammer_star_centers:
        total_out = sum(p["funding"] for p in plans)
        # decoy pre-scam transfer beats every later out-transfer (no chain
        # links), and the oversized revenue keeps T_B absent (no flows)
        w.transfer(center, w.address("decoy"), total_out + ETH, t0 - 200)
        payout = (total_out * share.denominator // share.numerator) * 2
        pool = w.scam_pool(center, t0, t0 + 600, _eth_range(rng, spec), payout)
        _register_pool(w, truth, pool, center)

    satellites = []
    for i, plan in enumerate(plans):
        s = w.address("scammer")
        satellites.append(s)
        start = t0 + 2_000 + i * 5_000
        if kind in ("out", "in_out"):
            w.transfer(center, s, plan["funding"], start)
        else:
            w.transfer(w.address("external"), s, plan["funding"], start)
        pool = w.scam_pool(s, start + 1_000, start + 2_000, plan["liquidity"],
                           plan["payout"])
        _register_pool(w, truth, pool, s)
        if kind in ("in", "in_out"):
            revenue = w.pool_revenue(plan["payout"])
            send = _cover_single(revenue, share, rng)
            w.transfer(s, center, send, start + 3_000)
    truth.stars.append(PlantedStar(kind=kind, center=center,
                                   satellites=frozenset(satellites)))


def _cover_single(revenue: int, share: Fraction, rng: random.Random) -> int:
    """A single-transfer amount covering share*revenue with headroom."""
    minimum = (revenue * share.numerator + share.denominator - 1) // share.denominator
    return minimum + rng.randint(0, ETH // 100)


def _plant_chain(w: _Writer, rng: random.Random, truth: GroundTruth,
                 share: Fraction) -> None:
    spec = w.spec
    length = rng.randint(*spec.chain_length)
    members = [w.address("scammer") for _ in range(length)]
    t0 = w.slot()
    step = 12_000
    link_value = 0
    seed_funder = w.address("external")
    for i, member in enumerate(members):
        start = t0 + i * step
        cost_eth = rng.randint(*spec.funding_eth)
        liquidity = cost_eth * ETH
        cost = w.pool_cost(liquidity)
        if i == 0:
            w.transfer(seed_funder, member, cost + ETH, start)
        # revenue must dwarf the outgoing link so T_B never exists
        link_out = cost  # what this member will send onward
        if i + 1 < length:
            next_cost = w.pool_cost(rng.randint(*spec.funding_eth) * ETH)
            link_out = next_cost + rng.randint(1, ETH)
        payout = (link_out * share.denominator // share.numerator) * 2
        pool = w.scam_pool(member, start + 1_000, start + 2_000, liquidity,
                           max(payout, liquidity + ETH))
        _register_pool(w, truth, pool, member)
        if i + 1 < length:
            w.transfer(member, members[i + 1], link_out, start + 3_000)
    truth.chains.append(PlantedChain(members=tuple(members)))


def _plant_flow(w: _Writer, rng: random.Random, truth: GroundTruth,
                share: Fraction) -> None:
    """One minimal flow: complete bipartite senders x receivers with every
    edge required on both sides."""
    spec = w.spec
    width = rng.randint(*spec.flow_width)
    n_senders = 1 if width == 2 else rng.randint(1, width - 1)
    n_receivers = width - n_senders
    senders = [w.address("scammer") for _ in range(n_senders)]
    receivers = [w.address("scammer") for _ in range(n_receivers)]
    t0 = w.slot()

    # Receiver costs and the edge values that exactly cover them.
    edge_value: dict[tuple[int, int], int] = {}
    receiver_liquidity = {}
    for j in range(n_receivers):
        liquidity = _eth_range(rng, spec)
        receiver_liquidity[j] = liquidity
        cost = w.pool_cost(liquidity)
        base = cost // n_senders + 1
        for i in range(n_senders):
            edge_value[(i, j)] = base + i  # distinct values, no ties
        if n_senders > 1:
            total = sum(edge_value[(i, j)] for i in range(n_senders))
            smallest = min(edge_value[(i, j)] for i in range(n_senders))
            assert total >= cost and total - smallest < cost

    # Sender scams sized so their out-edges are exactly T_B.
    fund_in = 0
    for i, sender in enumerate(senders):
        start = t0 + i * 3_000
        out_total = sum(edge_value[(i, j)] for j in range(n_receivers))
        out_min = min(edge_value[(i, j)] for j in range(n_receivers))
        revenue = _pick_target_amount(out_total, out_min, share)
        payout = revenue + w.spec.gas_fee
        liquidity = max(payout - rng.randint(1, 2) * ETH, ETH)
        cost = w.pool_cost(liquidity)
        funding = cost + rng.randint(0, ETH)
        w.transfer(w.address("external"), sender, funding, start)
        fund_in += funding
        pool = w.scam_pool(sender, start + 500, start + 1_000, liquidity, payout)
        _register_pool(w, truth, pool, sender)
        # decoy: a bigger pre-scam out-transfer so no flow edge is the
        # sender's max out-transaction (keeps chains out of flows)
        w.transfer(sender, w.address("decoy"), out_total + ETH, start + 100)

    t_edges = t0 + n_senders * 3_000 + 5_000
    for i, sender in enumerate(senders):
        for j, receiver in enumerate(receivers):
            w.transfer(sender, receiver, edge_value[(i, j)],
                       t_edges + i * 100 + j)

    # Receiver scams and their external payouts (their T_B leaves S).
    fund_out = 0
    t_recv = t_edges + 5_000
    for j, receiver in enumerate(receivers):
        start = t_recv + j * 3_000
        liquidity = receiver_liquidity[j]
        payout = liquidity + rng.randint(1, 3) * ETH
        pool = w.scam_pool(receiver, start, start + 1_000, liquidity, payout)
        _register_pool(w, truth, pool, receiver)
        revenue = w.pool_revenue(payout)
        send = _cover_single(revenue, share, rng)
        w.transfer(receiver, w.address("sink"), send, start + 2_000)
        fund_out += send

    truth.flows.append(PlantedFlow(
        vertices=frozenset(senders + receivers),
        width=width,
        fund_in=fund_in,
        fund_out=fund_out,
        inputs=frozenset(senders),
        outputs=frozenset(receivers),
    ))


def _plant_cluster(w: _Writer, rng: random.Random, truth: GroundTruth) -> None:
    """Scammers joined by a random spanning tree of small transfers plus
    occasional shared-pool roles."""
    spec = w.spec
    size = rng.randint(*spec.cluster_size)
    members = [w.address("scammer") for _ in range(size)]
    t0 = w.slot()
    shared_role_pairs: list[tuple[str, str]] = []
    for i, member in enumerate(members):
        start = t0 + i * 4_000
        liquidity = _eth_range(rng, spec)
        w.transfer(w.address("external"), member,
                   w.pool_cost(liquidity) + ETH, start)
        if i > 0 and rng.random() < 0.3:
            partner = members[rng.randrange(i)]
            pool = w.scam_pool(member, start + 1_000, start + 2_000, liquidity,
                               liquidity + ETH, remover=partner)
            _register_pool(w, truth, pool, member, partner)
            shared_role_pairs.append((member, partner))
        else:
            pool = w.scam_pool(member, start + 1_000, start + 2_000, liquidity,
                               liquidity + ETH)
            _register_pool(w, truth, pool, member)
    t_links = t0 + size * 4_000 + 10_000
    linked = {0}
    order = list(range(1, size))
    rng.shuffle(order)
    for k, idx in enumerate(order):
        other = rng.choice(sorted(linked))
        w.transfer(members[idx], members[other], ETH // 1_000, t_links + k)
        linked.add(idx)
    for _ in range(rng.randint(0, size)):
        u, v = rng.sample(range(size), 2)
        w.transfer(members[u], members[v], ETH // 1_000,
                   t_links + size + rng.randint(0, 1_000))
    truth.clusters.append(frozenset(members))


def _plant_wash_pool(w: _Writer, rng: random.Random, truth: GroundTruth) -> None:
    """A pool whose big buyers are cluster members (wash traders)."""
    spec = w.spec
    owner = w.address("scammer")
    t0 = w.slot()
    n_washers = rng.randint(*spec.wash_traders_per_pool)
    n_victims = rng.randint(*spec.victims_per_wash_pool)
    washers = [w.address("washer") for _ in range(n_washers)]

    liquidity = _eth_range(rng, spec)
    own_swap = rng.randint(1, 5) * ETH // 10
    wash_values = [rng.randint(1, 6) * ETH for _ in washers]
    victim_values = [rng.randint(1, 3) * ETH for _ in range(n_victims)]
    payout = liquidity + own_swap + sum(wash_values) + sum(victim_values)

    t_mint, t_burn = t0 + 1_000, t0 + 4_000
    pool = w.scam_pool(owner, t_mint, t_burn, liquidity, payout)
    _register_pool(w, truth, pool, owner)
    w.swap(pool, owner, own_swap, t_mint + 100, log_index=1)
    wash_fee_total = 0
    for k, (washer, value) in enumerate(zip(washers, wash_values)):
        w.swap(pool, washer, value, t_mint + 200 + k, log_index=2 + k)
        wash_fee_total += spec.gas_fee
    for k, value in enumerate(victim_values):
        w.swap(pool, w.address("victim"), value, t_mint + 400 + k,
               log_index=2 + n_washers + k)

    # washers run their own scams and link to the owner by small transfers
    for k, washer in enumerate(washers):
        start = t0 + 20_000 + k * 4_000
        liq = _eth_range(rng, spec)
        w.transfer(w.address("external"), washer, w.pool_cost(liq) + ETH, start)
        wpool = w.scam_pool(washer, start + 500, start + 1_500, liq, liq + ETH)
        _register_pool(w, truth, wpool, washer)
        w.transfer(owner if k == 0 else washers[k - 1], washer, ETH // 1_000,
                   t0 + 50_000 + k)

    truth.wash_pools[pool] = PlantedWashPool(
        pool=pool,
        owner=owner,
        cluster_members=frozenset([owner] + washers),
        liquidity=liquidity,
        payout=payout,
        own_swap_in=own_swap,
        wash_in_total=sum(wash_values),
        wash_fee_total=wash_fee_total,
        role_gas_total=3 * spec.gas_fee,  # mint + burn + own-swap commands
    )
    truth.clusters.append(frozenset([owner] + washers))


def _plant_noise(w: _Writer, rng: random.Random, truth: GroundTruth) -> None:
    """Benign addresses, benign pools (each failing one scam clause), and
    dust that must never flip any detector."""
    spec = w.spec
    noise = [w.address("noise") for _ in range(spec.noise_addresses)]
    truth.noise_addresses.update(noise)
    if noise:
        t0 = w.slot()
        for k in range(spec.noise_addresses * 2):
            u, v = rng.sample(noise, 2) if len(noise) >= 2 else (noise[0], noise[0])
            if u != v:
                w.transfer(u, v, rng.randint(1, 30 * ETH), t0 + k)

    for b in range(spec.benign_pools):
        t0 = w.slot()
        owner = rng.choice(noise) if noise else w.address("noise")
        style = b % 4
        liquidity = _eth_range(rng, spec)
        if style == 0:  # lives longer than a day
            pool = w.scam_pool(owner, t0, t0 + 90_000, liquidity, liquidity)
        elif style == 1:  # keeps 5% of LP
            pool = w.scam_pool(owner, t0, t0 + 2_000, liquidity, liquidity,
                               burn_ratio=(95, 100))
        elif style == 2:  # second mint event
            pool = w.scam_pool(owner, t0, t0 + 2_000, liquidity, liquidity)
            extra_tx = w.tx()
            w.events.append(PoolEventRecord(
                pool=pool, kind=EventKind.MINT, block=t0 + 500, log_index=0,
                timestamp=t0 + 500, actor=owner, tx_hash=extra_tx,
                amount_native=ETH, amount_token=10**22, lp_amount=10**17,
            ))
        else:  # healthy trading, no burn at all
            token = w.address("token")
            pool = w.address("pool")
            w.contracts.append(TokenContract(address=token, creator=owner,
                                             created_at=t0 - 30))
            w.pools.append(ExchangePool(
                address=pool, token0=WRAPPED_NATIVE, token1=token,
                native_side=NativeSide.TOKEN0, creator=owner, created_at=t0,
            ))
            w.events.append(PoolEventRecord(
                pool=pool, kind=EventKind.MINT, block=t0, log_index=0,
                timestamp=t0, actor=owner, tx_hash=w.tx(),
                amount_native=liquidity, amount_token=10**24, lp_amount=10**18,
            ))
            for k in range(3):
                w.swap(pool, rng.choice(noise) if noise else owner,
                       rng.randint(1, 3) * ETH, t0 + 100 + k, log_index=1 + k)
        truth.benign_pools.add(pool)

    scammer_pool = sorted(truth.scammers)
    for _ in range(spec.dust_transfers):
        t = w.spec.base_time + rng.randint(0, w._slot * _SLOT_SECONDS)
        sender = w.address("noise")
        if scammer_pool and rng.random() < 0.5:
            target = rng.choice(scammer_pool)
        elif noise:
            target = rng.choice(noise)
        else:
            target = w.address("noise")
        w.transfer(sender, target, rng.randint(1, 10**15), t)


@dataclass(frozen=True)
class MultiHopFixture:
    """A scammer whose big buyers form a wash network funded through a CEX,
    with the furthest trader five transfer hops from the scammer and none
    of them funded by the scammer directly."""

    scammer: str
    pool: str
    cex: str
    depositor: str
    wash_traders: frozenset[str]
    victim: str
    wash_in_total: int
    wash_swap_count: int
    hop_of: dict[str, int]


def multi_hop_wash_fixture(gas_fee: int = 10**15) -> tuple[SynthDataset, MultiHopFixture]:
    """The worked seven-trader wash network around one scam pool."""
    spec = PlantSpec(seed=0, gas_fee=gas_fee)
    w = _Writer(spec)
    t0 = w.slot()

    cex = w.address("external")
    scammer = w.address("scammer")
    depositor = w.address("sink")
    w1, w2, w3, w4, w5, w6, w7 = (w.address("washer") for _ in range(7))
    victim = w.address("victim")

    def eth(x: float) -> int:
        return round(x * 1000) * ETH // 1000

    w.transfer(cex, scammer, eth(7.5), t0, gas=gas_fee)
    t_mint, t_burn = t0 + 1_000, t0 + 5_000
    pool = w.scam_pool(scammer, t_mint, t_burn, eth(7.0), eth(9.29))

    w.transfer(cex, w1, eth(1.0), t0 + 500)
    w.swap(pool, w1, eth(0.2), t_mint + 60, log_index=1)
    w.transfer(w1, w2, eth(0.79), t_mint + 120)
    w.swap(pool, w2, eth(0.1), t_mint + 180, log_index=2)
    w.swap(pool, w2, eth(0.1), t_mint + 200, log_index=3)
    w.transfer(w2, w3, eth(0.56), t_mint + 260)
    w.swap(pool, w3, eth(0.2), t_mint + 320, log_index=4)
    w.transfer(w3, w4, eth(0.35), t_mint + 380)
    w.transfer(cex, w6, eth(1.3), t0 + 600)
    w.swap(pool, w6, eth(0.05), t_mint + 90, log_index=5)
    w.transfer(w6, w5, eth(0.9), t_mint + 100)
    w.swap(pool, w5, eth(0.05), t_mint + 140, log_index=6)
    w.transfer(w5, w4, eth(0.85), t_mint + 420)
    w.swap(pool, w4, eth(1.0), t_mint + 480, log_index=7)
    w.transfer(w4, w7, eth(0.19), t_mint + 540)
    w.swap(pool, w7, eth(0.15), t_mint + 600, log_index=8)
    w.transfer(w7, scammer, eth(0.025), t_mint + 660)
    w.transfer(w6, scammer, eth(0.4), t_mint + 720)
    # an organic victim tops the pool up to the recorded payout
    w.swap(pool, victim, eth(0.44), t_mint + 800, log_index=9)

    w.transfer(scammer, depositor, eth(9.77), t_burn + 100)
    w.transfer(depositor, cex, eth(9.7), t_burn + 200)

    dataset = SynthDataset(
        transfers=w.transfers, events=w.events, pools=w.pools,
        contracts=w.contracts,
    )
    fixture = MultiHopFixture(
        scammer=scammer,
        pool=pool,
        cex=cex,
        depositor=depositor,
        wash_traders=frozenset({w1, w2, w3, w4, w5, w6, w7}),
        victim=victim,
        wash_in_total=eth(0.2 + 0.1 + 0.1 + 0.2 + 0.05 + 0.05 + 1.0 + 0.15),
        wash_swap_count=8,
        hop_of={w7: 1, w6: 1, w4: 2, w3: 3, w5: 3, w2: 4, w1: 5},
    )
    return dataset, fixture


@dataclass(frozen=True)
class PoisoningFixture:
    scammer: str
    pool: str
    out_neighbor: str
    attacker: str
    phish_coordinator: str
    victims: frozenset[str]


def poisoning_fixture(victims: int = 50, gas_fee: int = 10**15) -> tuple[SynthDataset, PoisoningFixture]:
    """A dusting attacker bridging a scam network to benign victims.

    The attacker mimics the first/last four hex digits of the scammer's
    real out-neighbor and sends 1 wei; its own funder dusted many benign
    addresses, so an unfiltered walk would pull them all in.
    """
    spec = PlantSpec(seed=0, gas_fee=gas_fee)
    w = _Writer(spec)
    t0 = w.slot()

    scammer = w.address("scammer")
    out_neighbor = "0x" + "beef" + "0" * 32 + "cafe"
    attacker = "0x" + "beef" + "f" * 32 + "cafe"
    coordinator = w.address("coordinator")
    victim_list = [w.address("victim") for _ in range(victims)]

    w.transfer(w.address("external"), scammer, 10 * ETH, t0)
    pool = w.scam_pool(scammer, t0 + 1_000, t0 + 2_000, 5 * ETH, 6 * ETH)
    w.transfer(scammer, out_neighbor, 3 * ETH, t0 + 3_000)

    w.transfer(coordinator, attacker, ETH // 10, t0 + 3_500)
    w.transfer(attacker, scammer, 1, t0 + 4_000)  # the dust bait
    for i, victim in enumerate(victim_list):
        w.transfer(coordinator, victim, 1, t0 + 5_000 + i)

    dataset = SynthDataset(
        transfers=w.transfers, events=w.events, pools=w.pools,
        contracts=w.contracts,
    )
    fixture = PoisoningFixture(
        scammer=scammer,
        pool=pool,
        out_neighbor=out_neighbor,
        attacker=attacker,
        phish_coordinator=coordinator,
        victims=frozenset(victim_list),
    )
    return dataset, fixture


def save_generated(spec: PlantSpec, path: Union[str, Path]) -> tuple[Path, GroundTruth]:
    """Generate and persist a dataset; returns the directory and truth."""
    from .ingest.datasets import save_dataset

    dataset, truth = generate(spec)
    directory = save_dataset(
        path, dataset.transfers, dataset.events, dataset.pools,
        dataset.contracts, chain_id=dataset.chain_id,
        wrapped_native=dataset.wrapped_native,
    )
    truth_payload = {
        "scam_pools": {p: sorted(r) for p, r in sorted(truth.scam_pools.items())},
        "scammers": sorted(truth.scammers),
        "stars": [
            {"kind": s.kind, "center": s.center, "satellites": sorted(s.satellites)}
            for s in truth.stars
        ],
        "chains": [{"members": list(c.members)} for c in truth.chains],
        "flows": [
            {"vertices": sorted(f.vertices), "width": f.width,
             "fund_in": str(f.fund_in), "fund_out": str(f.fund_out)}
            for f in truth.flows
        ],
        "clusters": [sorted(c) for c in truth.clusters],
        "noise_addresses": sorted(truth.noise_addresses),
        "benign_pools": sorted(truth.benign_pools),
    }
    (directory / "ground_truth.json").write_text(
        json.dumps(truth_payload, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    return directory, truth
