"""Experiment orchestration: sweep the pair-count grid, run the configured
number of seeds per point, aggregate latency metrics, and persist CSV outputs
plus a reproducibility manifest."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .config import ScenarioConfig, render_config
from .core import NS_PER_MS, NS_PER_S
from .simulation import AllocSample, RunResult, run_single

RUNS_HEADER = (
    "backhaul,n_pairs,payload_bytes,run_index,mean_td_ms,min_td_ms,max_td_ms,"
    "sent,delivered,dropped,loss_ratio,deadline_fraction"
)
SUMMARY_HEADER = (
    "backhaul,n_pairs,payload_bytes,runs,mean_td_ms,min_td_ms,max_td_ms,"
    "sent,delivered,dropped,loss_ratio,deadline_fraction"
)
SNR_HEADER = "time_s,node_label,direction,snr_db"
ALLOC_HEADER = "subframe,node,direction,resources,tbs_bits"


@dataclass(frozen=True)
class MetricsRow:
    backhaul: str
    n_pairs: int
    payload_bytes: int
    run_index: int
    mean_td_ms: float
    min_td_ms: float
    max_td_ms: float
    sent: int
    delivered: int
    dropped: int
    loss_ratio: float
    deadline_fraction: float


@dataclass(frozen=True)
class SummaryRow:
    backhaul: str
    n_pairs: int
    payload_bytes: int
    runs: int
    mean_td_ms: float
    min_td_ms: float
    max_td_ms: float
    sent: int
    delivered: int
    dropped: int
    loss_ratio: float
    deadline_fraction: float


def metrics_from_run(cfg: ScenarioConfig, result: RunResult) -> MetricsRow:
    c = result.counters
    lat_ms = [r.td_ns / NS_PER_MS for r in c.records]
    met = sum(1 for r in c.records if r.met_deadline)
    if lat_ms:
        mean, lo, hi = sum(lat_ms) / len(lat_ms), min(lat_ms), max(lat_ms)
        fraction = met / len(lat_ms)
    else:
        # No deliveries: latency columns are zeroed rather than left blank.
        mean = lo = hi = 0.0
        fraction = 1.0 if c.sent == 0 else 0.0
    return MetricsRow(
        backhaul=cfg.backhaul,
        n_pairs=result.n_pairs,
        payload_bytes=cfg.payload_bytes,
        run_index=result.run_index,
        mean_td_ms=mean,
        min_td_ms=lo,
        max_td_ms=hi,
        sent=c.sent,
        delivered=c.delivered,
        dropped=c.dropped,
        loss_ratio=c.dropped / c.sent if c.sent else 0.0,
        deadline_fraction=fraction,
    )


def aggregate(rows: list[MetricsRow]) -> list[SummaryRow]:
    """One row per (backhaul, n_pairs, payload): mean of run means, pooled
    min/max, pooled counts."""
    groups: dict[tuple[str, int, int], list[MetricsRow]] = {}
    for row in rows:
        groups.setdefault((row.backhaul, row.n_pairs, row.payload_bytes), []).append(row)
    out = []
    for (backhaul, n_pairs, payload), members in sorted(groups.items()):
        delivered = sum(m.delivered for m in members)
        sent = sum(m.sent for m in members)
        dropped = sum(m.dropped for m in members)
        with_data = [m for m in members if m.delivered > 0]
        if with_data:
            mean = sum(m.mean_td_ms for m in with_data) / len(with_data)
            lo = min(m.min_td_ms for m in with_data)
            hi = max(m.max_td_ms for m in with_data)
            fraction = sum(m.deadline_fraction * m.delivered for m in with_data) / delivered
        else:
            mean = lo = hi = 0.0
            fraction = 1.0 if sent == 0 else 0.0
        out.append(
            SummaryRow(
                backhaul=backhaul,
                n_pairs=n_pairs,
                payload_bytes=payload,
                runs=len(members),
                mean_td_ms=mean,
                min_td_ms=lo,
                max_td_ms=hi,
                sent=sent,
                delivered=delivered,
                dropped=dropped,
                loss_ratio=dropped / sent if sent else 0.0,
                deadline_fraction=fraction,
            )
        )
    return out


def _run_point(
    args: tuple[ScenarioConfig, int, int, bool, bool],
) -> tuple[MetricsRow, list[str], list[str]]:
    cfg, n_pairs, run_index, trace_snr, trace_alloc = args
    result = run_single(
        cfg, n_pairs, run_index, trace_snr=trace_snr, trace_alloc=trace_alloc
    )
    snr_rows = [
        f"{s.time_ns / NS_PER_S:.6f},{s.node_label}[n={n_pairs}],{s.direction},{s.snr_db:.3f}"
        for s in result.snr_samples
    ]
    alloc_rows = [_alloc_row(a, n_pairs) for a in result.alloc_samples]
    return metrics_from_run(cfg, result), snr_rows, alloc_rows


def _alloc_row(a: AllocSample, n_pairs: int) -> str:
    return f"{a.subframe_index},{a.node_label}[n={n_pairs}],{a.direction},{a.resources},{a.tbs_bits}"


@dataclass
class SweepResult:
    rows: list[MetricsRow]
    summary: list[SummaryRow]
    snr_rows: list[str]
    alloc_rows: list[str]


def run_sweep(
    cfg: ScenarioConfig,
    *,
    trace_snr: bool = False,
    trace_alloc: bool = False,
    jobs: int = 1,
) -> SweepResult:
    """Run every (n_pairs, run_index) point of the scenario. Points are
    independent; with jobs > 1 they execute in parallel and the merge is made
    deterministic by sorting on the row key. Traces cover run 0 of each point
    so the SNR figure stays one curve pair per network size."""
    tasks = [
        (cfg, n_pairs, run_index, trace_snr and run_index == 0, trace_alloc and run_index == 0)
        for n_pairs in cfg.n_pairs_list
        for run_index in range(cfg.runs_per_point)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_point, tasks, chunksize=1))
    else:
        outcomes = [_run_point(t) for t in tasks]

    order = sorted(range(len(tasks)), key=lambda i: (tasks[i][1], tasks[i][2]))
    rows = [outcomes[i][0] for i in order]
    snr_rows = [line for i in order for line in outcomes[i][1]]
    alloc_rows = [line for i in order for line in outcomes[i][2]]
    return SweepResult(rows, aggregate(rows), snr_rows, alloc_rows)


def _metrics_line(row: MetricsRow | SummaryRow, count_field: int) -> str:
    return (
        f"{row.backhaul},{row.n_pairs},{row.payload_bytes},{count_field},"
        f"{row.mean_td_ms:.3f},{row.min_td_ms:.3f},{row.max_td_ms:.3f},"
        f"{row.sent},{row.delivered},{row.dropped},"
        f"{row.loss_ratio:.3f},{row.deadline_fraction:.3f}"
    )


def render_runs_csv(rows: list[MetricsRow]) -> str:
    lines = [RUNS_HEADER]
    lines += [_metrics_line(r, r.run_index) for r in rows]
    return "\n".join(lines) + "\n"


def render_summary_csv(summary: list[SummaryRow]) -> str:
    lines = [SUMMARY_HEADER]
    lines += [_metrics_line(r, r.runs) for r in summary]
    return "\n".join(lines) + "\n"


def render_manifest(cfg: ScenarioConfig) -> str:
    head = f"# rtcsim {__version__} reproducibility manifest\n# resolved configuration\n"
    return head + render_config(cfg)


def write_outputs(
    cfg: ScenarioConfig,
    result: SweepResult,
    out_dir: str | Path,
    *,
    trace_snr: bool = False,
    trace_alloc: bool = False,
) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {
        "runs": out / "runs.csv",
        "summary": out / "summary.csv",
        "manifest": out / "manifest.txt",
    }
    paths["runs"].write_text(render_runs_csv(result.rows), encoding="utf-8")
    paths["summary"].write_text(render_summary_csv(result.summary), encoding="utf-8")
    paths["manifest"].write_text(render_manifest(cfg), encoding="utf-8")
    if trace_snr:
        paths["snr"] = out / "snr_trace.csv"
        paths["snr"].write_text(
            "\n".join([SNR_HEADER] + result.snr_rows) + "\n", encoding="utf-8"
        )
    if trace_alloc:
        paths["alloc"] = out / "alloc_trace.csv"
        paths["alloc"].write_text(
            "\n".join([ALLOC_HEADER] + result.alloc_rows) + "\n", encoding="utf-8"
        )
    return paths
