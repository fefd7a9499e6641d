"""Command-line interface.

Subcommands mirror the pipeline stages; each stage command recomputes from
the dataset directory (every stage is a cheap deterministic function of
the snapshot), while `pipeline` runs everything and writes all artifacts.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from . import __version__
from .config import PipelineConfig
from .errors import RugscopeError
from .ingest.client import ApiClientConfig, EtherscanClient
from .ingest.datasets import load_snapshot, save_dataset
from .ingest.decoder import DecodeCounters, decode_pool_logs
from .network import TerminalPolicy, expand_network, network_aware_profit, network_to_dot
from .patterns import detect_chains, detect_major_flows, detect_stars
from .pipeline import run_pipeline
from .rugpull import ExclusionList, scan
from .synth import PlantSpec, save_generated


def _echo(line: str) -> None:
    click.echo(line)


def _load_dataset_or_fail(path: str):
    if not path or not Path(path).exists():
        raise click.UsageError(f"dataset directory not found: {path!r}")
    try:
        return load_snapshot(path)
    except RugscopeError as exc:
        raise click.ClickException(f"loading dataset failed: {exc}") from exc


def _write_jsonl(path: str, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, sort_keys=True, separators=(",", ":")) + "\n")
    _echo(f"wrote {len(rows)} records to {path}")


@click.group()
@click.version_option(version=__version__, prog_name="rugscope")
def main():
    """Rug-pull forensics for UniswapV2-style DEXs."""


@main.command()
@click.option("--spec", "spec_path", type=click.Path(exists=True),
              help="PlantSpec TOML/JSON file.")
@click.option("--seed", type=int, default=None, help="Override the spec seed.")
@click.option("--out", "out_dir", required=True, type=click.Path())
def synth(spec_path, seed, out_dir):
    """Generate a synthetic dataset with planted ground truth."""
    spec = PlantSpec.from_file(spec_path) if spec_path else PlantSpec()
    if seed is not None:
        spec.seed = seed
    directory, truth = save_generated(spec, out_dir)
    _echo(f"dataset written to {directory}")
    _echo(f"planted: {len(truth.scam_pools)} scam pools, "
          f"{len(truth.stars)} stars, {len(truth.chains)} chains, "
          f"{len(truth.flows)} flows, {len(truth.clusters)} clusters")


@main.command()
@click.option("--base-url", default="https://api.etherscan.io/api", show_default=True)
@click.option("--factory", required=True, help="DEX factory contract address.")
@click.option("--start", type=int, default=0, show_default=True)
@click.option("--end", type=int, required=True, help="Pool index bound (exclusive).")
@click.option("--wrapped-native", required=True,
              help="Wrapped native token address (WETH/WBNB).")
@click.option("--chain-id", type=int, default=1, show_default=True)
@click.option("--rps", type=float, default=5.0, show_default=True,
              help="Max requests per second.")
@click.option("--max-events", type=int, default=1000, show_default=True)
@click.option("--out", "out_dir", required=True, type=click.Path())
def ingest(base_url, factory, start, end, wrapped_native, chain_id, rps,
           max_events, out_dir):
    """Fetch pools, events, transfers, and sources from an Etherscan-compatible API.

    The API key is read from the ETHERSCAN_API_KEY environment variable.
    """
    config = ApiClientConfig(
        base_url=base_url,
        api_key=os.environ.get("ETHERSCAN_API_KEY", ""),
        max_requests_per_second=rps,
        max_events_per_pool=max_events,
        wrapped_native=wrapped_native,
        chain_id=chain_id,
    )
    client = EtherscanClient(config)
    try:
        pools = client.fetch_pools(factory, start, end)
        transfers = []
        events = []
        contracts = []
        counters = DecodeCounters()
        for pool in pools:
            logs, truncated = client.fetch_logs(pool.address)
            if truncated:
                pool = __import__("dataclasses").replace(pool, truncated=True)
            events.extend(decode_pool_logs(logs, pool, counters))
            transfers.extend(client.fetch_transfers(pool.creator))
            transfers.extend(client.fetch_transfers(pool.creator, internal=True))
            token = pool.scam_token
            if token:
                contracts.append(client.fetch_source(token))
        save_dataset(out_dir, transfers, events, pools, contracts,
                     chain_id=chain_id, wrapped_native=wrapped_native)
    except RugscopeError as exc:
        raise click.ClickException(f"ingestion failed: {exc}") from exc
    _echo(f"dataset written to {out_dir} "
          f"({len(pools)} pools, {counters.decoded} events decoded, "
          f"{counters.unrecognized} unrecognized)")


@main.command("scan")
@click.option("--dataset", required=True, type=click.Path())
@click.option("--exclusions", "exclusions_file", type=click.Path(exists=True))
@click.option("--out", "out_path", default="scam_pools.jsonl", show_default=True)
def scan_cmd(dataset, exclusions_file, out_path):
    """Classify one-day Simple Rug Pull pools."""
    snapshot = _load_dataset_or_fail(dataset)
    exclusions = ExclusionList.from_file(exclusions_file) if exclusions_file else None
    result = scan(snapshot, exclusions)
    rows = [
        {
            "pool": r.pool, "scam_token": r.scam_token,
            "roles": sorted(r.roles()),
            "lifetime_seconds": r.lifetime_seconds,
            "native_added": str(r.native_added),
            "native_removed": str(r.native_removed),
        }
        for r in result.records
    ]
    _write_jsonl(out_path, rows)
    _echo(f"{result.pools_scanned} native pools scanned, "
          f"{len(result.records)} scams, {len(result.scammers)} scammers, "
          f"{result.exclusion_hits} exclusion hits")


@main.command("detect-patterns")
@click.option("--dataset", required=True, type=click.Path())
@click.option("--p", type=float, default=0.9, show_default=True)
@click.option("--star-min", type=int, default=5, show_default=True)
@click.option("--kinds", default="star,chain,flow", show_default=True)
@click.option("--out", "out_path", default="patterns.jsonl", show_default=True)
def detect_patterns(dataset, p, star_min, kinds, out_path):
    """Mine scam stars, chains, and major funding flows."""
    snapshot = _load_dataset_or_fail(dataset)
    result = scan(snapshot)
    wanted = {k.strip() for k in kinds.split(",") if k.strip()}
    unknown = wanted - {"star", "chain", "flow"}
    if unknown:
        raise click.UsageError(f"unknown pattern kinds: {sorted(unknown)}")
    rows: list[dict] = []
    if "star" in wanted:
        for s in detect_stars(result.scammers, p, snapshot, result, n_min=star_min):
            rows.append({
                "kind": "star", "star_kind": s.kind.value, "center": s.center,
                "members": sorted(s.satellites), "fund_in": str(s.fund_in),
                "fund_out": str(s.fund_out),
                "period_days": round(s.period_days, 6),
                "scam_count": s.scam_count,
            })
    if "chain" in wanted:
        for c in detect_chains(result.scammers, snapshot, result):
            rows.append({
                "kind": "chain", "members": list(c.members),
                "period_days": round(c.period_days, 6),
                "scam_count": c.scam_count,
            })
    if "flow" in wanted:
        for f in detect_major_flows(result.scammers, p, snapshot, result):
            rows.append({
                "kind": "flow", "members": sorted(f.vertices), "width": f.width,
                "fund_in": str(f.fund_in), "fund_out": str(f.fund_out),
            })
    _write_jsonl(out_path, rows)


@main.command("build-clusters")
@click.option("--dataset", required=True, type=click.Path())
@click.option("--min-size", type=int, default=2, show_default=True)
@click.option("--min-value", type=int, default=0, show_default=True,
              help="Dust floor in wei for transfer edges.")
@click.option("--out", "out_path", default="clusters.jsonl", show_default=True)
@click.option("--dot", "dot_dir", type=click.Path(), default=None,
              help="Directory for per-cluster DOT exports.")
def build_clusters_cmd(dataset, min_size, min_value, out_path, dot_dir):
    """Build maximal scam clusters."""
    from .clusters import build_clusters

    snapshot = _load_dataset_or_fail(dataset)
    result = scan(snapshot)
    cluster_set = build_clusters(result.scammers, result, snapshot,
                                 min_value=min_value, min_size=min_size)
    rows = [
        {"id": c.id, "members": sorted(c.members), "pools": list(c.pools),
         "size": c.size}
        for c in cluster_set.clusters
    ]
    _write_jsonl(out_path, rows)
    _echo(f"{len(cluster_set.singletons)} singleton scammers outside clusters")
    if dot_dir:
        directory = Path(dot_dir)
        directory.mkdir(parents=True, exist_ok=True)
        for cluster in cluster_set.clusters:
            lines = ["graph cluster_%d {" % cluster.id, "  node [style=filled];"]
            for member in sorted(cluster.members):
                lines.append(f'  "{member[:10]}" [fillcolor=red];')
            for u, v, kind in sorted(cluster.edges):
                style = "solid" if kind == "transfer" else "dashed"
                lines.append(f'  "{u[:10]}" -- "{v[:10]}" [style={style}];')
            lines.append("}")
            (directory / f"cluster_{cluster.id}.dot").write_text(
                "\n".join(lines) + "\n", encoding="utf-8")
        _echo(f"DOT files written to {dot_dir}")


@main.command("similarity")
@click.option("--dataset", required=True, type=click.Path())
@click.option("--mode", type=click.Choice(["intra", "inter", "both"]),
              default="both", show_default=True)
@click.option("--seed", type=int, default=7, show_default=True)
@click.option("--out", "out_path", default="scores.jsonl", show_default=True)
def similarity_cmd(dataset, mode, seed, out_path):
    """Score contract-clone similarity within and across clusters."""
    from .clusters import build_clusters
    from .similarity import SamplePlan, build_fingerprint_index
    from .similarity.scoring import (
        inter_cluster_similarity,
        intra_cluster_similarity,
    )
    from .errors import InsufficientContracts

    snapshot = _load_dataset_or_fail(dataset)
    result = scan(snapshot)
    cluster_set = build_clusters(result.scammers, result, snapshot)
    index = build_fingerprint_index(
        {c.id: c.pools for c in cluster_set.clusters},
        {r.pool: r.scam_token for r in result.records},
        snapshot,
    )
    rows = []
    if mode in ("intra", "both"):
        for cid, prints in sorted(index.by_cluster.items()):
            if len(prints) >= 2:
                score = intra_cluster_similarity(prints)
                rows.append({"cluster": cid, "kind": "intra",
                             "score": f"{float(score):.6f}"})
    if mode in ("inter", "both"):
        try:
            inter = inter_cluster_similarity(index.by_cluster, SamplePlan(seed=seed))
            rows += [{"cluster": cid, "kind": "inter",
                      "score": f"{float(v):.6f}"} for cid, v in sorted(inter.items())]
        except InsufficientContracts as exc:
            _echo(f"inter-cluster skipped: {exc}")
    _write_jsonl(out_path, rows)
    _echo(f"{index.unverified} unverified contracts, "
          f"{index.parse_failures} parse failures skipped")


@main.command("profit")
@click.option("--dataset", required=True, type=click.Path())
@click.option("--mode", type=click.Choice(["naive", "cluster", "both"]),
              default="both", show_default=True)
@click.option("--out", "out_path", default="profits.jsonl", show_default=True)
def profit_cmd(dataset, mode, out_path):
    """Compute naive and cluster-aware scam profits."""
    from .clusters import build_clusters
    from .profit import (
        cluster_aware_profit,
        cluster_total_profit,
        inflation_summary,
        naive_profit,
    )
    from .report import profit_summary_lines

    snapshot = _load_dataset_or_fail(dataset)
    result = scan(snapshot)
    rows = []
    pool_reports = []
    totals = []
    if mode == "naive":
        for record in result.records:
            report = naive_profit(record, snapshot)
            rows.append({"pool": report.pool, "delta_naive": str(report.delta_naive)})
    else:
        cluster_set = build_clusters(result.scammers, result, snapshot)
        for cluster in cluster_set.clusters:
            for pool in cluster.pools:
                report = cluster_aware_profit(result.by_pool[pool], cluster,
                                              snapshot, result.scammers)
                pool_reports.append(report)
                rows.append({
                    "pool": report.pool,
                    "delta_naive": str(report.delta_naive),
                    "delta_cluster": str(report.delta_cluster),
                    "z_wash": str(report.z_wash),
                })
            totals.append(cluster_total_profit(cluster, result, snapshot))
        rows += [
            {"cluster": t.cluster_id, "total_cluster": str(t.total_cluster),
             "transfer_fees": str(t.transfer_fees)}
            for t in totals
        ]
    _write_jsonl(out_path, rows)
    if pool_reports:
        for line in profit_summary_lines(inflation_summary(pool_reports, totals)):
            _echo(line)


@main.command("build-network")
@click.option("--dataset", required=True, type=click.Path())
@click.option("--cluster-id", type=int, required=True)
@click.option("--max-nodes", type=int, default=200, show_default=True)
@click.option("--policy", "policy_file", type=click.Path(exists=True),
              help="Public-label file (address [label] per line).")
@click.option("--dot", "dot_path", type=click.Path(), default=None)
@click.option("--out", "out_path", default="network.json", show_default=True)
def build_network_cmd(dataset, cluster_id, max_nodes, policy_file, dot_path,
                      out_path):
    """Expand a scam network from a seed cluster."""
    from .clusters import build_clusters

    snapshot = _load_dataset_or_fail(dataset)
    result = scan(snapshot)
    cluster_set = build_clusters(result.scammers, result, snapshot)
    matches = [c for c in cluster_set.clusters if c.id == cluster_id]
    if not matches:
        raise click.UsageError(f"no cluster with id {cluster_id} "
                               f"(have 1..{len(cluster_set.clusters)})")
    policy = (TerminalPolicy.from_file(policy_file) if policy_file
              else TerminalPolicy())
    network = expand_network(matches[0], snapshot, result, policy,
                             max_nodes=max_nodes)
    reports, fees = network_aware_profit(network, result, snapshot)
    payload = {
        "seed_cluster": network.seed_id,
        "nodes": list(network.nodes),
        "roles": {a: sorted(r.value for r in l.roles)
                  for a, l in sorted(network.labels.items())},
        "truncation": [list(t) for t in network.truncation_log],
        "budget_exceeded": network.budget_exceeded,
        "pool_deltas": {r.pool: str(r.delta_cluster) for r in reports},
        "transfer_fees": str(fees),
    }
    Path(out_path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                              encoding="utf-8")
    _echo(f"network of {len(network.nodes)} nodes written to {out_path}")
    if dot_path:
        Path(dot_path).write_text(network_to_dot(network, policy), encoding="utf-8")
        _echo(f"DOT written to {dot_path}")


@main.command("report")
@click.option("--dataset", required=True, type=click.Path())
@click.option("--out-dir", default="rugscope-out", show_default=True)
def report_cmd(dataset, out_dir):
    """Run the analysis stages and emit tables plus histogram data."""
    config = PipelineConfig(dataset=dataset, out_dir=out_dir)
    try:
        run_pipeline(config, progress=_echo)
    except FileNotFoundError as exc:
        raise click.UsageError(str(exc)) from exc


@main.command("pipeline")
@click.option("--config", "config_file", type=click.Path(exists=True),
              help="TOML/JSON pipeline configuration.")
@click.option("--dataset", type=click.Path(), default=None)
@click.option("--out-dir", default=None)
@click.option("--p", type=float, default=None)
@click.option("--star-min", type=int, default=None)
@click.option("--networks/--no-networks", "build_networks", default=None)
def pipeline_cmd(config_file, dataset, out_dir, p, star_min, build_networks):
    """Run every stage: scan, patterns, clusters, similarity, profit, report."""
    if config_file:
        config = PipelineConfig.from_file(
            config_file, dataset=dataset, out_dir=out_dir, p=p,
            star_min=star_min, build_networks=build_networks,
        )
    else:
        if not dataset:
            raise click.UsageError("either --config or --dataset is required")
        config = PipelineConfig(dataset=dataset).with_overrides(
            out_dir=out_dir, p=p, star_min=star_min,
            build_networks=build_networks,
        )
    if not Path(config.dataset).exists():
        raise click.UsageError(f"dataset directory not found: {config.dataset!r}")
    try:
        run_pipeline(config, progress=_echo)
    except RugscopeError as exc:
        raise click.ClickException(str(exc)) from exc


if __name__ == "__main__":
    main()
