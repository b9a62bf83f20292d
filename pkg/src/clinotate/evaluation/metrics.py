"""Precision / recall / F1 computation and inter-annotator agreement.

Ratios with a zero denominator are reported as absent (None), never as 0;
agreement scoring maps the no-true-positive case to 0 explicitly so that
fully disjoint annotator corpora score 0 rather than undefined.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .matching import MatchMode, MatchResult, MentionLike, match_corpus


@dataclass(frozen=True, slots=True)
class ConceptMetrics:
    tp: int
    fp: int
    fn: int
    precision: float | None
    recall: float | None
    f1: float | None


@dataclass(frozen=True, slots=True)
class MetricsReport:
    mode: MatchMode
    tp: int
    fp: int
    fn: int
    precision: float | None
    recall: float | None
    f1: float | None
    per_concept: Mapping[str, ConceptMetrics]


def f1_from_pr(p: float, r: float) -> float | None:
    """Harmonic mean of precision and recall; absent when both are zero."""
    if p == 0 and r == 0:
        return None
    return 2 * p * r / (p + r)


def _ratios(tp: int, fp: int, fn: int) -> tuple[float | None, float | None, float | None]:
    precision = tp / (tp + fp) if tp + fp else None
    recall = tp / (tp + fn) if tp + fn else None
    f1 = None
    if precision is not None and recall is not None:
        f1 = f1_from_pr(precision, recall)
    return precision, recall, f1


def metrics_from_counts(tp: int, fp: int, fn: int, mode: MatchMode,
                        per_concept: Mapping[str, ConceptMetrics] | None = None) -> MetricsReport:
    precision, recall, f1 = _ratios(tp, fp, fn)
    return MetricsReport(mode=mode, tp=tp, fp=fp, fn=fn,
                         precision=precision, recall=recall, f1=f1,
                         per_concept=per_concept or {})


def compute_metrics(mr: MatchResult) -> MetricsReport:
    """Overall and per-concept metrics from a pairing result."""
    concepts = sorted(
        {g.concept for g, _ in mr.tp}
        | {s.concept for s in mr.fp}
        | {g.concept for g in mr.fn}
    )
    per_concept = {}
    for concept in concepts:
        tp = sum(1 for g, _ in mr.tp if g.concept == concept)
        fp = sum(1 for s in mr.fp if s.concept == concept)
        fn = sum(1 for g in mr.fn if g.concept == concept)
        precision, recall, f1 = _ratios(tp, fp, fn)
        per_concept[concept] = ConceptMetrics(tp, fp, fn, precision, recall, f1)
    return metrics_from_counts(mr.tp_count, mr.fp_count, mr.fn_count, mr.mode, per_concept)


def compute_iaa(
    ann_a: Mapping[str, Sequence[MentionLike]],
    ann_b: Mapping[str, Sequence[MentionLike]],
) -> float:
    """Span-mode agreement between two annotators over the same documents:
    the mean of the two directional F1 scores, symmetric by construction."""
    if set(ann_a) != set(ann_b):
        only_a = sorted(set(ann_a) - set(ann_b))
        only_b = sorted(set(ann_b) - set(ann_a))
        raise ValueError(
            "annotator corpora must cover the same documents; "
            f"only in a: {only_a[:5]}, only in b: {only_b[:5]}"
        )
    return (_directional_f1(ann_a, ann_b) + _directional_f1(ann_b, ann_a)) / 2


def _directional_f1(gold, system) -> float:
    mr = match_corpus(gold, system, MatchMode.SPAN)
    total = mr.tp_count + mr.fp_count + mr.fn_count
    if total == 0:
        return 1.0  # both annotators empty: perfect agreement
    if mr.tp_count == 0:
        return 0.0
    report = compute_metrics(mr)
    assert report.f1 is not None
    return report.f1
