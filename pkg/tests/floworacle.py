"""Exhaustive major-flow oracle and random instance generator.

Every edge set satisfying (P1) is a union of complete T_F sets (each
vertex with in-edges contributes exactly its T_F), so enumerating all
subsets of the in-side collection covers every candidate edge set. The
oracle validates (P1), (P2), and the two-vertex floor directly from the
definitions and keeps the maximal survivors.
"""

from __future__ import annotations

import random
from collections import deque

from rugscope.ledger import NativeTransfer
from rugscope.patterns.flows import compute_all_funding_sets
from rugscope.rugpull import ScanResult, scan

from conftest import ETH, LedgerBuilder, addr


def _weakly_connected(edges: frozenset[NativeTransfer]) -> bool:
    vertices = set()
    adjacency: dict[str, set[str]] = {}
    for e in edges:
        vertices.update((e.sender, e.receiver))
        adjacency.setdefault(e.sender, set()).add(e.receiver)
        adjacency.setdefault(e.receiver, set()).add(e.sender)
    if not vertices:
        return False
    start = next(iter(vertices))
    seen = {start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for other in adjacency.get(node, ()):
            if other not in seen:
                seen.add(other)
                queue.append(other)
    return seen == vertices


def is_valid_flow(
    edges: frozenset[NativeTransfer],
    funding,
    scammers: set[str],
) -> bool:
    """(P1) + (P2) + |V| >= 2, checked straight from the definitions."""
    if not edges:
        return False
    vertices = {e.sender for e in edges} | {e.receiver for e in edges}
    if len(vertices) < 2 or not vertices <= scammers:
        return False
    for v in vertices:
        ins = {e for e in edges if e.receiver == v}
        outs = {e for e in edges if e.sender == v}
        fs = funding.get(v)
        if ins:
            if fs is None or fs.t_f is None or ins != set(fs.t_f):
                return False
        if outs:
            if fs is None or fs.t_b is None or outs != set(fs.t_b):
                return False
    return _weakly_connected(edges)


def oracle_maximal_flows(
    scammers,
    p,
    snapshot,
    scan_result: ScanResult,
) -> set[frozenset[NativeTransfer]]:
    """Enumerate unions of T_F sets, validate, keep the maximal flows."""
    scammer_set = {s for s in scammers if s in scan_result.windows}
    funding = compute_all_funding_sets(scammer_set, p, snapshot, scan_result)
    tf_sets = [frozenset(fs.t_f) for fs in funding.values() if fs.t_f]

    valid: set[frozenset[NativeTransfer]] = set()
    for mask in range(1, 1 << len(tf_sets)):
        edges: frozenset[NativeTransfer] = frozenset()
        for i in range(len(tf_sets)):
            if mask >> i & 1:
                edges |= tf_sets[i]
        if is_valid_flow(edges, funding, scammer_set):
            valid.add(edges)
    return {f for f in valid if not any(f < g for g in valid)}


def random_instance(rng: random.Random):
    """A small scammer population with layered funding plus noise transfers.

    Returns (snapshot, scan_result). Scammer count stays at or below 12 so
    the oracle's subset enumeration is tractable.
    """
    b = LedgerBuilder()
    n = rng.randint(4, 12)
    scammers = [addr(f"s{i:02d}") for i in range(n)]

    # Staggered scam windows: scams happen layer by layer.
    layers: list[list[str]] = []
    remaining = scammers[:]
    while remaining:
        width = min(len(remaining), rng.randint(1, 3))
        layers.append(remaining[:width])
        remaining = remaining[width:]

    window_of = {}
    cost_by_scammer = {}
    base = 100_000
    for li, layer in enumerate(layers):
        for s in layer:
            t_mint = base + li * 50_000 + rng.randint(0, 5_000)
            t_burn = t_mint + rng.randint(500, 4_000)
            cost = rng.randint(2, 15) * ETH
            payout = rng.randint(2, 20) * ETH
            b.scam_pool(s, s[-6:], t_mint=t_mint, t_burn=t_burn,
                        liquidity=cost, payout=payout)
            window_of[s] = (t_mint, t_burn)
            cost_by_scammer[s] = cost

    # Structured inter-layer funding: senders split across one or two
    # next-layer receivers, sized against the receiver's cost so that
    # multi-funder coverage (width > 2) happens regularly.
    cost_of = {s: c for s, c in cost_by_scammer.items()}
    for li in range(len(layers) - 1):
        for s in layers[li]:
            if rng.random() < 0.25:
                continue
            receivers = rng.sample(layers[li + 1], k=min(len(layers[li + 1]),
                                                         rng.randint(1, 2)))
            t_send = window_of[s][1] + rng.randint(1_000, 8_000)
            for r in receivers:
                if t_send >= window_of[r][0]:
                    continue
                share = rng.choice((55, 60, 70, 80, 105, 120))
                value = cost_of[r] * share // 100 + rng.randint(0, ETH)
                b.transfer(s, r, value, ts=t_send)
                t_send += rng.randint(1, 50)

    # External funding for the first layer and random payouts for the last.
    for s in layers[0]:
        b.transfer(addr("ext-" + s[-4:]), s, rng.randint(2, 20) * ETH,
                   ts=window_of[s][0] - rng.randint(100, 2_000))
    for s in layers[-1]:
        if rng.random() < 0.7:
            b.transfer(s, addr("sink-" + s[-4:]), rng.randint(2, 20) * ETH,
                       ts=window_of[s][1] + rng.randint(100, 2_000))

    # Noise: dust and odd-timing transfers among random parties.
    parties = scammers + [addr(f"noise{i}") for i in range(3)]
    for _ in range(rng.randint(0, 2 * n)):
        u, v = rng.sample(parties, 2)
        b.transfer(u, v, rng.randint(1, 30 * ETH), ts=rng.randint(50_000, 900_000))

    snap = b.snapshot()
    return snap, scan(snap)
