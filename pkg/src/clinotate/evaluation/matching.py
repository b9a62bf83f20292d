"""Mention-level pairing of gold and system annotations.

A true positive requires overlapping spans and equal concept types (plus
equal certainty in span+certainty mode).  Pairing is greedy one-to-one:
candidate pairs are ranked by gold start position, then by overlap length
descending, and each mention joins at most one pair.  A type-mismatched
overlap therefore surfaces as one false negative and one false positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Protocol, Sequence

from ..model import Certainty, Span


class MentionLike(Protocol):
    span: Span
    concept: str
    certainty: Certainty


class MatchMode(Enum):
    SPAN = "span"
    SPAN_CERTAINTY = "span+certainty"


@dataclass(frozen=True, slots=True)
class SystemMention:
    """A system-side mention as read back from pipeline output."""

    doc_id: str
    span: Span
    concept: str
    certainty: Certainty = Certainty.POSITIVE


@dataclass(frozen=True, slots=True)
class MatchResult:
    tp: tuple[tuple[MentionLike, MentionLike], ...]
    fp: tuple[MentionLike, ...]
    fn: tuple[MentionLike, ...]
    mode: MatchMode

    @property
    def tp_count(self) -> int:
        return len(self.tp)

    @property
    def fp_count(self) -> int:
        return len(self.fp)

    @property
    def fn_count(self) -> int:
        return len(self.fn)


def match_mentions(
    gold: Sequence[MentionLike],
    system: Sequence[MentionLike],
    mode: MatchMode = MatchMode.SPAN,
) -> MatchResult:
    """Pair one document's gold and system mentions."""
    candidates: list[tuple[int, int, int, int, int, int, int]] = []
    for gi, g in enumerate(gold):
        for si, s in enumerate(system):
            if not g.span.overlaps(s.span):
                continue
            if g.concept != s.concept:
                continue
            if mode is MatchMode.SPAN_CERTAINTY and g.certainty != s.certainty:
                continue
            overlap = min(g.span.end, s.span.end) - max(g.span.start, s.span.start)
            candidates.append(
                (g.span.start, -overlap, g.span.end, s.span.start, s.span.end, gi, si)
            )
    candidates.sort()
    used_gold: set[int] = set()
    used_system: set[int] = set()
    tp: list[tuple[MentionLike, MentionLike]] = []
    for *_, gi, si in candidates:
        if gi in used_gold or si in used_system:
            continue
        used_gold.add(gi)
        used_system.add(si)
        tp.append((gold[gi], system[si]))
    fn = tuple(g for i, g in enumerate(gold) if i not in used_gold)
    fp = tuple(s for i, s in enumerate(system) if i not in used_system)
    return MatchResult(tp=tuple(tp), fp=fp, fn=fn, mode=mode)


def match_corpus(
    gold: Mapping[str, Sequence[MentionLike]],
    system: Mapping[str, Sequence[MentionLike]],
    mode: MatchMode = MatchMode.SPAN,
) -> MatchResult:
    """Pair per document and merge buckets deterministically by doc_id.

    Documents present on only one side contribute their mentions wholly to
    that side's error bucket.
    """
    tp: list[tuple[MentionLike, MentionLike]] = []
    fp: list[MentionLike] = []
    fn: list[MentionLike] = []
    for doc_id in sorted(set(gold) | set(system)):
        result = match_mentions(gold.get(doc_id, ()), system.get(doc_id, ()), mode)
        tp.extend(result.tp)
        fp.extend(result.fp)
        fn.extend(result.fn)
    return MatchResult(tp=tuple(tp), fp=tuple(fp), fn=tuple(fn), mode=mode)
