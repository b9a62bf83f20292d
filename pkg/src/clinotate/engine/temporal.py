"""Date expression extraction and resolution against the document date.

Recognized forms: ISO dates (YYYY-MM-DD), US dates (M/D/YYYY), and the
relative vocabulary {today, yesterday, "N day(s)/week(s) ago", "last week"}
with N numeric or a number word one through ten.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import date, timedelta
from enum import Enum

from ..model import Document, Span
from .segmentation import SentenceSpan


class TemporalKind(Enum):
    ABSOLUTE_DATE = "absolute_date"
    RELATIVE_EXPRESSION = "relative_expression"


@dataclass(frozen=True, slots=True)
class TemporalMention:
    span: Span
    kind: TemporalKind
    resolved: date | None = None


_NUMBER_WORDS = {
    "one": 1, "two": 2, "three": 3, "four": 4, "five": 5,
    "six": 6, "seven": 7, "eight": 8, "nine": 9, "ten": 10,
}

_ISO_RE = re.compile(r"\b(\d{4})-(\d{2})-(\d{2})\b")
_US_RE = re.compile(r"\b(\d{1,2})/(\d{1,2})/(\d{4})\b")
_COUNT = r"(?:\d{1,3}|" + "|".join(_NUMBER_WORDS) + r")"
_AGO_RE = re.compile(rf"\b({_COUNT})\s+(day|days|week|weeks)\s+ago\b", re.IGNORECASE)
_WORD_RE = re.compile(r"\b(today|yesterday|last\s+week)\b", re.IGNORECASE)


def extract_temporal(doc: Document, sentences: list[SentenceSpan]) -> list[TemporalMention]:
    """All date expressions in the document, resolved where possible.

    Absolute dates always resolve; relative expressions resolve only when the
    document date is known.
    """
    found: list[TemporalMention] = []
    text = doc.text

    for m in _ISO_RE.finditer(text):
        resolved = _safe_date(int(m.group(1)), int(m.group(2)), int(m.group(3)))
        if resolved:
            found.append(TemporalMention(Span(m.start(), m.end()),
                                         TemporalKind.ABSOLUTE_DATE, resolved))
    for m in _US_RE.finditer(text):
        resolved = _safe_date(int(m.group(3)), int(m.group(1)), int(m.group(2)))
        if resolved:
            found.append(TemporalMention(Span(m.start(), m.end()),
                                         TemporalKind.ABSOLUTE_DATE, resolved))

    anchor = doc.doc_date
    for m in _AGO_RE.finditer(text):
        count_text = m.group(1).lower()
        count = _NUMBER_WORDS.get(count_text) or int(count_text)
        days = count * (7 if m.group(2).lower().startswith("week") else 1)
        resolved = anchor - timedelta(days=days) if anchor else None
        found.append(TemporalMention(Span(m.start(), m.end()),
                                     TemporalKind.RELATIVE_EXPRESSION, resolved))
    for m in _WORD_RE.finditer(text):
        word = " ".join(m.group(1).lower().split())
        if anchor is None:
            resolved = None
        elif word == "today":
            resolved = anchor
        elif word == "yesterday":
            resolved = anchor - timedelta(days=1)
        else:
            resolved = anchor - timedelta(days=7)
        found.append(TemporalMention(Span(m.start(), m.end()),
                                     TemporalKind.RELATIVE_EXPRESSION, resolved))

    return _drop_nested(found)


def _safe_date(year: int, month: int, day: int) -> date | None:
    try:
        return date(year, month, day)
    except ValueError:
        return None


def _drop_nested(found: list[TemporalMention]) -> list[TemporalMention]:
    # Keep the longest expression when two overlap (e.g. a date inside a
    # larger relative phrase); ties go leftmost.
    chosen: list[TemporalMention] = []
    for m in sorted(found, key=lambda t: (-len(t.span), t.span.start, t.span.end)):
        if all(not m.span.overlaps(c.span) for c in chosen):
            chosen.append(m)
    chosen.sort(key=lambda t: (t.span.start, t.span.end))
    return chosen
