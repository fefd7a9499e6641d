"""Pipeline orchestration: scan -> patterns -> clusters -> similarity ->
profits -> optional networks -> report.

Every stage writes one JSONL artifact whose first line is a header with
the config hash and dataset hash. A stage whose artifact already exists
with matching hashes is not rewritten (the bytes are already what this
run would produce, since every stage is a deterministic function of the
snapshot and config); the stage status then reads "cached".
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from .clusters import ClusterSet, build_clusters, cluster_pattern_census
from .config import PipelineConfig, dataset_hash
from .errors import InsufficientContracts, RugscopeError
from .ingest.datasets import load_snapshot
from .ledger import DatasetSnapshot
from .network import TerminalPolicy, expand_network, network_aware_profit
from .patterns import (
    detect_chains,
    detect_major_flows,
    detect_stars,
    pattern_overlap_report,
)
from .profit import (
    cluster_aware_profit,
    cluster_total_profit,
    inflation_summary,
)
from .report import emit_report
from .rugpull import ExclusionList, ScanResult, scan
from .similarity import SamplePlan, build_fingerprint_index
from .similarity.scoring import inter_cluster_similarity, intra_cluster_similarity


@dataclass
class StageStatus:
    name: str
    path: Optional[Path]
    cached: bool
    detail: str = ""


@dataclass
class PipelineResult:
    config: PipelineConfig
    stages: list[StageStatus] = field(default_factory=list)
    scan_result: Optional[ScanResult] = None
    cluster_set: Optional[ClusterSet] = None
    summary_lines: list[str] = field(default_factory=list)

    def stage(self, name: str) -> StageStatus:
        return next(s for s in self.stages if s.name == name)


class _StageWriter:
    def __init__(self, out_dir: Path, config_hash: str, data_hash: str):
        self.out_dir = out_dir
        self.config_hash = config_hash
        self.data_hash = data_hash
        out_dir.mkdir(parents=True, exist_ok=True)

    def header(self, stage: str) -> dict:
        return {
            "stage": stage,
            "config_hash": self.config_hash,
            "dataset_hash": self.data_hash,
            "format": "rugscope-stage-v1",
        }

    def emit(self, name: str, stage: str, rows: list[dict]) -> StageStatus:
        path = self.out_dir / name
        payload_lines = [json.dumps({"header": self.header(stage)},
                                    sort_keys=True, separators=(",", ":"))]
        payload_lines += [
            json.dumps(row, sort_keys=True, separators=(",", ":")) for row in rows
        ]
        payload = "\n".join(payload_lines) + "\n"
        if path.exists() and path.read_text(encoding="utf-8") == payload:
            return StageStatus(stage, path, cached=True, detail=f"{len(rows)} rows")
        path.write_text(payload, encoding="utf-8")
        return StageStatus(stage, path, cached=False, detail=f"{len(rows)} rows")


def _wei(x: Optional[int]) -> Optional[str]:
    return None if x is None else str(x)


def run_pipeline(
    config: PipelineConfig,
    progress: Callable[[str], None] = lambda line: None,
) -> PipelineResult:
    """Execute every stage; artifacts land in config.out_dir."""
    dataset_dir = Path(config.dataset)
    if not config.dataset or not dataset_dir.exists():
        raise FileNotFoundError(f"dataset directory not found: {config.dataset!r}")

    snapshot = load_snapshot(dataset_dir)
    writer = _StageWriter(Path(config.out_dir), config.config_hash(),
                          dataset_hash(dataset_dir))
    result = PipelineResult(config=config)

    exclusions = None
    if config.exclusions_file:
        exclusions = ExclusionList.from_file(config.exclusions_file)

    # -- scan -----------------------------------------------------------------
    scan_result = scan(snapshot, exclusions, config.day_seconds, config.burn_pct)
    result.scan_result = scan_result
    rows = [
        {
            "pool": r.pool, "scam_token": r.scam_token,
            "token_creator": r.token_creator, "pool_creator": r.pool_creator,
            "liquidity_provider": r.liquidity_provider,
            "liquidity_remover": r.liquidity_remover,
            "lifetime_seconds": r.lifetime_seconds,
            "native_added": str(r.native_added),
            "native_removed": str(r.native_removed),
        }
        for r in scan_result.records
    ]
    status = writer.emit("scam_pools.jsonl", "scan", rows)
    result.stages.append(status)
    progress(f"scan: {len(rows)} scam pools, {len(scan_result.scammers)} scammers"
             f" ({'cached' if status.cached else 'written'})")

    # -- patterns ---------------------------------------------------------------
    scammers = scan_result.scammers
    stars = detect_stars(scammers, config.p, snapshot, scan_result,
                         n_min=config.star_min,
                         include_own_swaps=config.include_own_swaps)
    chains = detect_chains(scammers, snapshot, scan_result)
    flows = detect_major_flows(scammers, config.p, snapshot, scan_result,
                               include_own_swaps=config.include_own_swaps)
    overlap = pattern_overlap_report(stars, chains, flows)
    rows = (
        [{
            "kind": "star", "star_kind": s.kind.value, "center": s.center,
            "members": sorted(s.satellites), "fund_in": str(s.fund_in),
            "fund_out": str(s.fund_out), "period_days": round(s.period_days, 6),
            "scam_count": s.scam_count,
        } for s in stars]
        + [{
            "kind": "chain", "members": list(c.members),
            "period_days": round(c.period_days, 6), "scam_count": c.scam_count,
        } for c in chains]
        + [{
            "kind": "flow", "members": sorted(f.vertices), "width": f.width,
            "fund_in": str(f.fund_in), "fund_out": str(f.fund_out),
            "roles": {v: r.value for v, r in sorted(f.roles.items())},
        } for f in flows]
    )
    status = writer.emit("patterns.jsonl", "patterns", rows)
    result.stages.append(status)
    progress(f"patterns: {len(stars)} stars, {len(chains)} chains, "
             f"{len(flows)} flows ({'cached' if status.cached else 'written'})")

    # -- clusters ------------------------------------------------------------
    cluster_set = build_clusters(scammers, scan_result, snapshot,
                                 min_value=config.cluster_min_value,
                                 min_size=config.cluster_min_size)
    result.cluster_set = cluster_set
    census = cluster_pattern_census(cluster_set, stars, chains, flows)
    rows = [
        {
            "id": c.id, "members": sorted(c.members), "pools": list(c.pools),
            "size": c.size,
            "patterns": census.get(c.id).total if c.id in census else 0,
        }
        for c in cluster_set.clusters
    ]
    status = writer.emit("clusters.jsonl", "clusters", rows)
    result.stages.append(status)
    progress(f"clusters: {len(cluster_set.clusters)} clusters, "
             f"{len(cluster_set.singletons)} singletons "
             f"({'cached' if status.cached else 'written'})")

    # -- similarity ----------------------------------------------------------
    index = build_fingerprint_index(
        {c.id: c.pools for c in cluster_set.clusters},
        {r.pool: r.scam_token for r in scan_result.records},
        snapshot,
    )
    intra: dict[int, Fraction] = {}
    for cid, prints in sorted(index.by_cluster.items()):
        if len(prints) >= 2:
            intra[cid] = intra_cluster_similarity(prints)
    plan = SamplePlan(
        max_tokens_per_cluster=config.similarity_max_tokens,
        partner_clusters=config.similarity_partner_clusters,
        repeats=config.similarity_repeats,
        seed=config.similarity_seed,
    )
    try:
        inter = inter_cluster_similarity(index.by_cluster, plan)
    except InsufficientContracts:
        inter = {}
    rows = [
        {"cluster": cid, "kind": "intra", "score": f"{float(v):.6f}",
         "num": v.numerator, "den": v.denominator}
        for cid, v in sorted(intra.items())
    ] + [
        {"cluster": cid, "kind": "inter", "score": f"{float(v):.6f}",
         "num": v.numerator, "den": v.denominator}
        for cid, v in sorted(inter.items())
    ]
    status = writer.emit("similarity.jsonl", "similarity", rows)
    result.stages.append(status)
    progress(f"similarity: {len(intra)} intra, {len(inter)} inter scores; "
             f"{index.unverified} unverified, {index.parse_failures} parse "
             f"failures ({'cached' if status.cached else 'written'})")

    # -- profits ----------------------------------------------------------------
    pool_reports = []
    cluster_totals = {}
    for cluster in cluster_set.clusters:
        per_pool = {}
        for pool in cluster.pools:
            report = cluster_aware_profit(scan_result.by_pool[pool], cluster,
                                          snapshot, scan_result.scammers)
            per_pool[pool] = report
            pool_reports.append(report)
        cluster_totals[cluster.id] = cluster_total_profit(
            cluster, scan_result, snapshot, per_pool
        )
    summary = inflation_summary(pool_reports, list(cluster_totals.values()))
    rows = [
        {
            "pool": r.pool, "x_naive": str(r.x_naive), "y_naive": str(r.y_naive),
            "delta_naive": str(r.delta_naive), "x_cluster": _wei(r.x_cluster),
            "y_cluster": _wei(r.y_cluster), "z_wash": _wei(r.z_wash),
            "delta_cluster": _wei(r.delta_cluster),
        }
        for r in pool_reports
    ] + [
        {
            "cluster": t.cluster_id, "total_naive": str(t.total_naive),
            "total_cluster": str(t.total_cluster),
            "transfer_fees": str(t.transfer_fees),
            "has_wash_trading": t.has_wash_trading,
        }
        for t in cluster_totals.values()
    ]
    status = writer.emit("profits.jsonl", "profits", rows)
    result.stages.append(status)
    progress(f"profits: {len(pool_reports)} pool reports "
             f"({'cached' if status.cached else 'written'})")

    # -- networks (optional) ---------------------------------------------------
    if config.build_networks:
        policy_kwargs = dict(
            min_swap_ins=10,
            soft_tx_limit=config.soft_tx_limit,
            hard_tx_limit=config.hard_tx_limit,
            dust_ceiling=config.dust_ceiling,
        )
        if config.public_labels_file:
            policy = TerminalPolicy.from_file(config.public_labels_file,
                                              **policy_kwargs)
        else:
            policy = TerminalPolicy(**policy_kwargs)
        rows = []
        for cluster in cluster_set.clusters:
            network = expand_network(cluster, snapshot, scan_result, policy,
                                     max_nodes=config.max_network_nodes)
            reports, fees = network_aware_profit(network, scan_result, snapshot)
            rows.append({
                "seed_cluster": cluster.id,
                "nodes": list(network.nodes),
                "roles": {a: sorted(r.value for r in l.roles)
                          for a, l in sorted(network.labels.items())},
                "truncation": [list(t) for t in network.truncation_log],
                "budget_exceeded": network.budget_exceeded,
                "pool_deltas": {r.pool: str(r.delta_cluster) for r in reports},
                "transfer_fees": str(fees),
            })
        status = writer.emit("networks.jsonl", "networks", rows)
        result.stages.append(status)
        progress(f"networks: {len(rows)} expanded "
                 f"({'cached' if status.cached else 'written'})")

    # -- report ----------------------------------------------------------------
    header = (f"config `{writer.config_hash}` dataset `{writer.data_hash}` | "
              f"p={config.p} star_min={config.star_min} "
              f"burn_pct={config.burn_pct} day_seconds={config.day_seconds}")
    emit_report(
        Path(config.out_dir), header, stars, chains, flows,
        cluster_set=cluster_set, census=census, cluster_totals=cluster_totals,
        intra=intra, inter=inter, summary=summary,
    )
    result.stages.append(StageStatus("report", Path(config.out_dir) / "report.md",
                                     cached=False))

    from .report import profit_summary_lines

    result.summary_lines = [
        f"scam pools: {len(scan_result.records)} | scammers: {len(scammers)}",
        f"patterns: {len(stars)} stars / {len(chains)} chains / {len(flows)} flows"
        f" | covered addresses: {overlap.total_covered}",
        f"clusters: {len(cluster_set.clusters)}"
        f" (singleton scammers: {len(cluster_set.singletons)})",
    ] + profit_summary_lines(summary)
    for line in result.summary_lines:
        progress(line)
    return result
