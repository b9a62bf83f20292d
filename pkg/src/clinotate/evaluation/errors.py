"""Error-category tallies over reviewed false positives and false negatives.

Categories are assigned by human reviewers in a sidecar file; this module
only tallies.  Percentages are of the total errors on that side (all FPs or
all FNs in the match result, labeled or not), rounded half-up to whole
percent.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .matching import MatchResult

MentionKey = tuple[str, str, int, int, str]  # (doc_id, concept, start, end, side)


class ErrorCategory(Enum):
    # False-positive review outcomes.
    MISSING_ANNOTATION = "missing_annotation"
    HARD_TO_JUDGE = "hard_to_judge"
    NOT_TARGET_INSTRUCTION_EDUCATION = "not_target_instruction_education"
    NOT_TARGET_ADVERSE_EVENT_INDICATION = "not_target_adverse_event_indication"
    NOT_TARGET_GOAL_PRECAUTION = "not_target_goal_precaution"
    NOT_TARGET_TEMPLATE = "not_target_template"
    NOT_TARGET_OTHER = "not_target_other"
    NLP_NOT_PRECISE = "nlp_not_precise"
    # False-negative review outcomes.
    NLP_NOT_COMPLETE = "nlp_not_complete"
    ANNOTATION_ERROR = "annotation_error"
    TOKENIZATION_ERROR = "tokenization_error"
    TEMPLATE = "template"


FP_CATEGORIES = frozenset({
    ErrorCategory.MISSING_ANNOTATION,
    ErrorCategory.HARD_TO_JUDGE,
    ErrorCategory.NOT_TARGET_INSTRUCTION_EDUCATION,
    ErrorCategory.NOT_TARGET_ADVERSE_EVENT_INDICATION,
    ErrorCategory.NOT_TARGET_GOAL_PRECAUTION,
    ErrorCategory.NOT_TARGET_TEMPLATE,
    ErrorCategory.NOT_TARGET_OTHER,
    ErrorCategory.NLP_NOT_PRECISE,
})

FN_CATEGORIES = frozenset({
    ErrorCategory.NLP_NOT_COMPLETE,
    ErrorCategory.ANNOTATION_ERROR,
    ErrorCategory.TOKENIZATION_ERROR,
    ErrorCategory.TEMPLATE,
})


def percent_of(count: int, total: int) -> int:
    """Whole percent with exact half-up rounding."""
    if total <= 0:
        raise ValueError("total must be positive")
    return int(Fraction(count * 100, total) + Fraction(1, 2))


def categorize_errors(
    mr: MatchResult,
    labels: Mapping[MentionKey, ErrorCategory],
) -> dict[ErrorCategory, tuple[int, int]]:
    """Tally labels into category -> (count, percent-of-side)."""
    fp_keys = {_key(s, "fp") for s in mr.fp}
    fn_keys = {_key(g, "fn") for g in mr.fn}
    counts: dict[ErrorCategory, int] = {}
    for key, category in labels.items():
        side = key[4]
        if side == "fp":
            if key not in fp_keys:
                raise ValueError(f"label {key} does not identify a false positive")
            if category not in FP_CATEGORIES:
                raise ValueError(f"category {category.value} is not a false-positive category")
        elif side == "fn":
            if key not in fn_keys:
                raise ValueError(f"label {key} does not identify a false negative")
            if category not in FN_CATEGORIES:
                raise ValueError(f"category {category.value} is not a false-negative category")
        else:
            raise ValueError(f"label side must be 'fp' or 'fn', got {side!r}")
        counts[category] = counts.get(category, 0) + 1

    tallies: dict[ErrorCategory, tuple[int, int]] = {}
    for category, count in counts.items():
        total = len(fp_keys) if category in FP_CATEGORIES else len(fn_keys)
        tallies[category] = (count, percent_of(count, total))
    return tallies


def _key(mention, side: str) -> MentionKey:
    doc_id = getattr(mention, "doc_id", "")
    return (doc_id, mention.concept, mention.span.start, mention.span.end, side)


def read_error_labels(path) -> dict[MentionKey, ErrorCategory]:
    """Read a reviewer sidecar: doc_id, concept, start, end, side, category
    (tab-separated, '#' comments)."""
    labels: dict[MentionKey, ErrorCategory] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 6:
            raise ValueError(f"{path}:{lineno}: expected 6 tab-separated fields")
        doc_id, concept, start, end, side, category = parts
        try:
            labels[(doc_id, concept, int(start), int(end), side)] = ErrorCategory(category)
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from exc
    return labels
