"""Mention-level evaluation: gold loading, pairing, metrics, splits,
error tallies, and federated site-report aggregation."""

from .aggregate import (
    AggregateRow,
    AggregateTable,
    SiteReport,
    aggregate_site_reports,
    load_site_reports,
    render_table,
    site_report_from_json,
    site_report_to_json,
    table_to_csv,
)
from .errors import (
    FN_CATEGORIES,
    FP_CATEGORIES,
    ErrorCategory,
    categorize_errors,
    percent_of,
    read_error_labels,
)
from .gold import CorpusError, GoldAnnotation, load_brat_corpus, parse_ann
from .matching import MatchMode, MatchResult, SystemMention, match_corpus, match_mentions
from .metrics import (
    ConceptMetrics,
    MetricsReport,
    compute_iaa,
    compute_metrics,
    f1_from_pr,
    metrics_from_counts,
)
from .splitting import SplitSpec, split_corpus
from .system_input import load_system_mentions

__all__ = [
    "AggregateRow",
    "AggregateTable",
    "ConceptMetrics",
    "CorpusError",
    "ErrorCategory",
    "FN_CATEGORIES",
    "FP_CATEGORIES",
    "GoldAnnotation",
    "MatchMode",
    "MatchResult",
    "MetricsReport",
    "SiteReport",
    "SplitSpec",
    "SystemMention",
    "aggregate_site_reports",
    "categorize_errors",
    "compute_iaa",
    "compute_metrics",
    "f1_from_pr",
    "load_brat_corpus",
    "load_site_reports",
    "load_system_mentions",
    "match_corpus",
    "match_mentions",
    "metrics_from_counts",
    "parse_ann",
    "percent_of",
    "read_error_labels",
    "render_table",
    "site_report_from_json",
    "site_report_to_json",
    "split_corpus",
    "table_to_csv",
]
