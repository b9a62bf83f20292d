"""Site reports and federated aggregation.

A site report carries counts and ratios only — never note text, snippets, or
spans — so it is the one artifact allowed to leave a site.  The aggregator
consumes a directory of JSON reports and produces per-site rows plus a
pooled micro-average recomputed from summed counts.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

from .errors import ErrorCategory
from .matching import MatchMode
from .metrics import ConceptMetrics, MetricsReport, metrics_from_counts

POOLED_SITE = "ALL"


@dataclass(frozen=True, slots=True)
class SiteReport:
    site: str
    dataset: str
    metrics_span: MetricsReport
    metrics_span_certainty: MetricsReport
    error_tallies: Mapping[ErrorCategory, int]


@dataclass(frozen=True, slots=True)
class AggregateRow:
    site: str
    dataset: str
    mode: MatchMode
    tp: int
    fp: int
    fn: int
    precision: float | None
    recall: float | None
    f1: float | None


@dataclass(frozen=True, slots=True)
class AggregateTable:
    rows: tuple[AggregateRow, ...]

    def site_rows(self) -> tuple[AggregateRow, ...]:
        return tuple(r for r in self.rows if r.site != POOLED_SITE)

    def pooled_rows(self) -> tuple[AggregateRow, ...]:
        return tuple(r for r in self.rows if r.site == POOLED_SITE)


def aggregate_site_reports(reports: Sequence[SiteReport]) -> AggregateTable:
    if not reports:
        raise ValueError("at least one site report is required")
    seen: set[tuple[str, str]] = set()
    for report in reports:
        key = (report.site, report.dataset)
        if key in seen:
            raise ValueError(f"duplicate site report for {key}")
        seen.add(key)

    rows: list[AggregateRow] = []
    for mode_name in ("metrics_span", "metrics_span_certainty"):
        for report in reports:
            metrics: MetricsReport = getattr(report, mode_name)
            rows.append(AggregateRow(
                site=report.site, dataset=report.dataset, mode=metrics.mode,
                tp=metrics.tp, fp=metrics.fp, fn=metrics.fn,
                precision=metrics.precision, recall=metrics.recall, f1=metrics.f1,
            ))
        tp = sum(getattr(r, mode_name).tp for r in reports)
        fp = sum(getattr(r, mode_name).fp for r in reports)
        fn = sum(getattr(r, mode_name).fn for r in reports)
        mode = getattr(reports[0], mode_name).mode
        pooled = metrics_from_counts(tp, fp, fn, mode)
        rows.append(AggregateRow(
            site=POOLED_SITE, dataset="pooled", mode=mode,
            tp=tp, fp=fp, fn=fn,
            precision=pooled.precision, recall=pooled.recall, f1=pooled.f1,
        ))
    return AggregateTable(tuple(rows))


# -- JSON wire form -----------------------------------------------------------

def metrics_to_json(m: MetricsReport) -> dict:
    return {
        "mode": m.mode.value,
        "tp": m.tp, "fp": m.fp, "fn": m.fn,
        "precision": m.precision, "recall": m.recall, "f1": m.f1,
        "per_concept": {
            concept: {
                "tp": c.tp, "fp": c.fp, "fn": c.fn,
                "precision": c.precision, "recall": c.recall, "f1": c.f1,
            }
            for concept, c in sorted(m.per_concept.items())
        },
    }


def metrics_from_json(raw: Mapping) -> MetricsReport:
    per_concept = {
        concept: ConceptMetrics(
            tp=c["tp"], fp=c["fp"], fn=c["fn"],
            precision=c["precision"], recall=c["recall"], f1=c["f1"],
        )
        for concept, c in raw.get("per_concept", {}).items()
    }
    return MetricsReport(
        mode=MatchMode(raw["mode"]),
        tp=raw["tp"], fp=raw["fp"], fn=raw["fn"],
        precision=raw["precision"], recall=raw["recall"], f1=raw["f1"],
        per_concept=per_concept,
    )


def site_report_to_json(report: SiteReport) -> str:
    payload = {
        "site": report.site,
        "dataset": report.dataset,
        "metrics_span": metrics_to_json(report.metrics_span),
        "metrics_span_certainty": metrics_to_json(report.metrics_span_certainty),
        "error_tallies": {
            category.value: count
            for category, count in sorted(report.error_tallies.items(), key=lambda kv: kv[0].value)
        },
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def site_report_from_json(content: str) -> SiteReport:
    raw = json.loads(content)
    return SiteReport(
        site=raw["site"],
        dataset=raw["dataset"],
        metrics_span=metrics_from_json(raw["metrics_span"]),
        metrics_span_certainty=metrics_from_json(raw["metrics_span_certainty"]),
        error_tallies={
            ErrorCategory(name): count for name, count in raw.get("error_tallies", {}).items()
        },
    )


def load_site_reports(directory) -> list[SiteReport]:
    directory = Path(directory)
    reports = []
    for path in sorted(directory.glob("*.json")):
        reports.append(site_report_from_json(path.read_text(encoding="utf-8")))
    return reports


# -- rendering ----------------------------------------------------------------

def _fmt(value: float | None) -> str:
    return f"{value:.3f}" if value is not None else "-"


def render_table(table: AggregateTable) -> str:
    headers = ("site", "dataset", "mode", "tp", "fp", "fn", "precision", "recall", "f1")
    cells = [headers]
    for r in table.rows:
        cells.append((
            r.site, r.dataset, r.mode.value, str(r.tp), str(r.fp), str(r.fn),
            _fmt(r.precision), _fmt(r.recall), _fmt(r.f1),
        ))
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = []
    for row in cells:
        lines.append("  ".join(value.ljust(width) for value, width in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def table_to_csv(table: AggregateTable) -> str:
    import csv
    import io

    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(("site", "dataset", "mode", "tp", "fp", "fn", "precision", "recall", "f1"))
    for r in table.rows:
        writer.writerow((
            r.site, r.dataset, r.mode.value, r.tp, r.fp, r.fn,
            "" if r.precision is None else f"{r.precision:.6f}",
            "" if r.recall is None else f"{r.recall:.6f}",
            "" if r.f1 is None else f"{r.f1:.6f}",
        ))
    return buf.getvalue()
