"""Report emission: pattern statistics tables (max;avg convention),
similarity histograms as bin data, and profit summaries.

Tables are emitted as markdown plus CSV; histograms as CSV bin data for
external plotting. Nothing here renders images.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from .clusters import ClusterSet, PatternCensus
from .ledger import WEI_PER_NATIVE
from .patterns import ChainResult, MajorFlowResult, StarResult
from .profit import ClusterProfitReport, InflationSummary, PoolProfitReport


def _eth(wei: int) -> float:
    return wei / WEI_PER_NATIVE


def _max_avg(values: Sequence[float]) -> str:
    if not values:
        return "-"
    return f"{max(values):,.6g};{sum(values) / len(values):,.6g}"


@dataclass
class Table:
    title: str
    columns: list[str]
    rows: list[list[str]]

    def to_markdown(self) -> str:
        lines = [f"### {self.title}", ""]
        lines.append("| " + " | ".join(self.columns) + " |")
        lines.append("|" + "|".join("---" for _ in self.columns) + "|")
        for row in self.rows:
            lines.append("| " + " | ".join(row) + " |")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        out = [",".join(self.columns)]
        for row in self.rows:
            out.append(",".join(cell.replace(",", "") for cell in row))
        return "\n".join(out) + "\n"


def star_table(stars: Sequence[StarResult]) -> Table:
    rows = []
    for kind in ("in", "out", "in_out"):
        group = [s for s in stars if s.kind.value == kind]
        rows.append([
            kind,
            str(len(group)),
            _max_avg([s.size for s in group]),
            _max_avg([_eth(s.fund_in) for s in group if s.fund_in]),
            _max_avg([_eth(s.fund_out) for s in group if s.fund_out]),
            _max_avg([s.period_days for s in group]),
            _max_avg([s.scam_count for s in group]),
        ])
    return Table(
        title="Scam stars (max;avg)",
        columns=["Type", "#Stars", "Size", "Fund In", "Fund Out", "Period", "#Scams"],
        rows=rows,
    )


def chain_table(chains: Sequence[ChainResult]) -> Table:
    avg_transfers = [
        _eth(sum(t.value for t in c.link_transfers)) / len(c.link_transfers)
        for c in chains if c.link_transfers
    ]
    rows = [[
        str(len(chains)),
        _max_avg([c.length for c in chains]),
        _max_avg(avg_transfers),
        _max_avg([c.period_days for c in chains]),
        _max_avg([c.scam_count for c in chains]),
    ]]
    return Table(
        title="Scam chains (max;avg)",
        columns=["#Chains", "Length", "Avg Transfer", "Period (days)", "#Scams"],
        rows=rows,
    )


def flow_table(flows: Sequence[MajorFlowResult]) -> Table:
    rows = [[
        str(len(flows)),
        _max_avg([f.size for f in flows]),
        _max_avg([f.width for f in flows]),
        _max_avg([_eth(f.fund_in) for f in flows]),
        _max_avg([_eth(f.fund_out) for f in flows]),
    ]]
    return Table(
        title="Major scam-funding flows (max;avg)",
        columns=["#Flows", "Size", "Width", "Fund In", "Fund Out"],
        rows=rows,
    )


def cluster_table(
    cluster_set: ClusterSet,
    census: Mapping[int, PatternCensus],
    totals: Mapping[int, ClusterProfitReport],
    top: int = 5,
) -> Table:
    ranked = sorted(cluster_set.clusters, key=lambda c: (-c.size, c.id))[:top]
    rows = []
    for cluster in ranked:
        profit = totals.get(cluster.id)
        pattern_count = census.get(cluster.id)
        rows.append([
            str(cluster.id),
            str(len(cluster.pools)),
            str(cluster.size),
            str(pattern_count.total if pattern_count else 0),
            f"{_eth(profit.total_cluster):,.4f}" if profit else "-",
        ])
    return Table(
        title=f"Largest scam clusters (top {top})",
        columns=["ID", "#Scams", "Size", "#Patterns", "Profit (native)"],
        rows=rows,
    )


def histogram(values: Iterable[float], bins: int = 20,
              lo: float = 0.0, hi: float = 1.0) -> list[tuple[float, float, int]]:
    """Fixed-width bin counts over [lo, hi]; the last bin is right-closed."""
    counts = [0] * bins
    width = (hi - lo) / bins
    for v in values:
        idx = int((v - lo) / width)
        idx = min(max(idx, 0), bins - 1)
        counts[idx] += 1
    return [(lo + i * width, lo + (i + 1) * width, counts[i]) for i in range(bins)]


def histogram_csv(bins: list[tuple[float, float, int]]) -> str:
    out = ["bin_lo,bin_hi,count"]
    for lo, hi, count in bins:
        out.append(f"{lo:.4f},{hi:.4f},{count}")
    return "\n".join(out) + "\n"


def similarity_histograms(
    intra: Mapping[int, Fraction],
    inter: Mapping[int, Fraction],
) -> dict[str, list[tuple[float, float, int]]]:
    return {
        "intra_cluster": histogram(float(v) for v in intra.values()),
        "inter_cluster": histogram(float(v) for v in inter.values()),
    }


def profit_summary_lines(summary: InflationSummary) -> list[str]:
    def pct(x: Optional[float]) -> str:
        return "n/a" if x is None else f"{x:.1f}%"

    return [
        f"pools analyzed: {summary.pool_count}; clusters: {summary.cluster_count}",
        "avg pool profit: naive "
        f"{summary.avg_pool_naive_wei / WEI_PER_NATIVE:.4f} vs cluster-aware "
        f"{summary.avg_pool_cluster_wei / WEI_PER_NATIVE:.4f} native "
        f"(inflation {pct(summary.pool_inflation_pct)})",
        "avg cluster profit: naive "
        f"{summary.avg_cluster_naive_wei / WEI_PER_NATIVE:.4f} vs cluster-aware "
        f"{summary.avg_cluster_cluster_wei / WEI_PER_NATIVE:.4f} native "
        f"(inflation {pct(summary.cluster_inflation_pct)})",
        f"clusters with wash traders: {summary.wash_cluster_count} "
        f"({summary.wash_cluster_share_pct:.1f}%)",
    ]


def emit_report(
    out_dir: Path,
    header: str,
    stars: Sequence[StarResult],
    chains: Sequence[ChainResult],
    flows: Sequence[MajorFlowResult],
    cluster_set: Optional[ClusterSet] = None,
    census: Optional[Mapping[int, PatternCensus]] = None,
    cluster_totals: Optional[Mapping[int, ClusterProfitReport]] = None,
    intra: Optional[Mapping[int, Fraction]] = None,
    inter: Optional[Mapping[int, Fraction]] = None,
    summary: Optional[InflationSummary] = None,
) -> list[Path]:
    """Write report.md plus per-table CSVs and histogram data files."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    tables = [
        ("stars", star_table(stars)),
        ("chains", chain_table(chains)),
        ("flows", flow_table(flows)),
    ]
    if cluster_set is not None:
        tables.append(
            ("clusters", cluster_table(cluster_set, census or {}, cluster_totals or {}))
        )

    md = [f"# rugscope report", "", header, ""]
    for name, table in tables:
        md.append(table.to_markdown())
        csv_path = out_dir / f"table_{name}.csv"
        csv_path.write_text(table.to_csv(), encoding="utf-8")
        written.append(csv_path)

    if intra is not None or inter is not None:
        hists = similarity_histograms(intra or {}, inter or {})
        for name, bins in hists.items():
            path = out_dir / f"hist_{name}.csv"
            path.write_text(histogram_csv(bins), encoding="utf-8")
            written.append(path)
            md.append(f"- histogram data: `{path.name}`")

    if summary is not None:
        md.append("### Profit summary")
        md.append("")
        for line in profit_summary_lines(summary):
            md.append(f"- {line}")
        md.append("")

    report_path = out_dir / "report.md"
    report_path.write_text("\n".join(md) + "\n", encoding="utf-8")
    written.insert(0, report_path)
    return written
