"""Core domain types shared by every layer: spans, certainty, mentions, documents.

Offsets are 0-based, half-open, and index Unicode code points of the document
text (the same convention brat standoff files use), never bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from typing import Mapping


class Certainty(Enum):
    POSITIVE = "positive"
    NEGATED = "negated"
    HYPOTHETICAL = "hypothetical"
    POSSIBLE = "possible"

    @classmethod
    def from_string(cls, value: str) -> "Certainty":
        try:
            return cls(value.strip().lower())
        except ValueError:
            raise ValueError(f"unknown certainty value: {value!r}") from None


class Experiencer(Enum):
    PATIENT = "patient"
    OTHER = "other"

    @classmethod
    def from_string(cls, value: str) -> "Experiencer":
        try:
            return cls(value.strip().lower())
        except ValueError:
            raise ValueError(f"unknown experiencer value: {value!r}") from None


@dataclass(frozen=True, slots=True, order=True)
class Span:
    """Half-open character interval [start, end); empty spans are rejected."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start < 0:
            raise ValueError(f"span start must be >= 0, got {self.start}")
        if self.end <= self.start:
            raise ValueError(f"span end must exceed start, got [{self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start

    def overlaps(self, other: "Span") -> bool:
        return self.start < other.end and other.start < self.end

    def contains(self, other: "Span") -> bool:
        return self.start <= other.start and other.end <= self.end

    def slice(self, text: str) -> str:
        if self.end > len(text):
            raise IndexError(f"span [{self.start}, {self.end}) exceeds text length {len(text)}")
        return text[self.start : self.end]


def span_overlaps(a: Span, b: Span) -> bool:
    """True iff the two spans share at least one character position."""
    return a.overlaps(b)


def snippet(text: str, s: Span, window: int) -> str:
    """Slice of ``text`` around ``s`` widened by ``window`` characters each side,
    clipped to the text bounds."""
    if window < 0:
        raise ValueError("window must be >= 0")
    if s.end > len(text):
        raise IndexError(f"span [{s.start}, {s.end}) exceeds text length {len(text)}")
    return text[max(0, s.start - window) : min(len(text), s.end + window)]


@dataclass(frozen=True, slots=True)
class Document:
    doc_id: str
    text: str
    doc_date: date | None = None

    def __post_init__(self) -> None:
        if not self.doc_id:
            raise ValueError("doc_id must be non-empty")


@dataclass(frozen=True, slots=True)
class ConceptMention:
    """One extracted concept occurrence.

    ``matched_text`` is the verbatim document slice at ``span``; ``rule_id``
    identifies the dictionary entry or rule pattern that produced the match.
    """

    span: Span
    concept: str
    certainty: Certainty = Certainty.POSITIVE
    matched_text: str = ""
    experiencer: Experiencer = Experiencer.PATIENT
    normalized_date: date | None = None
    rule_id: str = ""

    @property
    def start(self) -> int:
        return self.span.start

    @property
    def end(self) -> int:
        return self.span.end


def validate_mention(
    m: ConceptMention,
    d: Document,
    concepts: frozenset[str] | None = None,
) -> list[str]:
    """Check every mention invariant against the document; returns all
    violations found (empty list means ok).

    ``concepts`` enables the membership check against an active rule
    package's concept set when one is in scope.
    """
    violations: list[str] = []
    if m.span.end > len(d.text):
        violations.append(
            f"span out of bounds: [{m.span.start}, {m.span.end}) vs text length {len(d.text)}"
        )
    else:
        actual = d.text[m.span.start : m.span.end]
        if actual != m.matched_text:
            violations.append(
                f"text mismatch: span slices to {actual!r} but matched_text is {m.matched_text!r}"
            )
    if not m.concept:
        violations.append("concept must be non-empty")
    elif concepts is not None and m.concept not in concepts:
        violations.append(f"concept {m.concept} not in the active package's concept set")
    return violations


# Canonical mention serialization.  One record per mention; the same field
# set is used in tab-separated and JSON form by the pipeline, the evaluation
# loaders, and the HTTP service.

MENTION_FIELDS = (
    "doc_id",
    "concept",
    "start",
    "end",
    "certainty",
    "experiencer",
    "matched_text",
    "normalized_date",
    "rule_id",
)

# '#' is escaped so persisted fields can never be mistaken for comment lines.
_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r", "#": "\\#"}


def escape_field(value: str) -> str:
    """Make a string safe for one tab-separated field (reversible)."""
    out = []
    for ch in value:
        out.append(_ESCAPES.get(ch, ch))
    return "".join(out)


def unescape_field(value: str) -> str:
    """Reverse :func:`escape_field`; unknown backslash pairs pass through
    verbatim so hand-authored regex bodies like ``\\b`` survive."""
    out = []
    i = 0
    while i < len(value):
        ch = value[i]
        if ch == "\\" and i + 1 < len(value):
            nxt = value[i + 1]
            if nxt == "\\":
                out.append("\\")
                i += 2
                continue
            if nxt == "t":
                out.append("\t")
                i += 2
                continue
            if nxt == "n":
                out.append("\n")
                i += 2
                continue
            if nxt == "r":
                out.append("\r")
                i += 2
                continue
            if nxt == "#":
                out.append("#")
                i += 2
                continue
        out.append(ch)
        i += 1
    return "".join(out)


def mention_to_dict(doc_id: str, m: ConceptMention) -> dict:
    return {
        "doc_id": doc_id,
        "concept": m.concept,
        "start": m.span.start,
        "end": m.span.end,
        "certainty": m.certainty.value,
        "experiencer": m.experiencer.value,
        "matched_text": m.matched_text,
        "normalized_date": m.normalized_date.isoformat() if m.normalized_date else "",
        "rule_id": m.rule_id,
    }


def mention_from_dict(record: Mapping) -> tuple[str, ConceptMention]:
    raw_date = record.get("normalized_date") or ""
    mention = ConceptMention(
        span=Span(int(record["start"]), int(record["end"])),
        concept=str(record["concept"]),
        certainty=Certainty.from_string(str(record["certainty"])),
        matched_text=str(record.get("matched_text", "")),
        experiencer=Experiencer.from_string(str(record.get("experiencer", "patient"))),
        normalized_date=date.fromisoformat(raw_date) if raw_date else None,
        rule_id=str(record.get("rule_id", "")),
    )
    return str(record["doc_id"]), mention


def mention_to_tsv(doc_id: str, m: ConceptMention) -> str:
    d = mention_to_dict(doc_id, m)
    return "\t".join(escape_field(str(d[name])) for name in MENTION_FIELDS)


def mention_from_tsv(line: str) -> tuple[str, ConceptMention]:
    parts = line.rstrip("\n").split("\t")
    if len(parts) != len(MENTION_FIELDS):
        raise ValueError(
            f"expected {len(MENTION_FIELDS)} tab-separated fields, got {len(parts)}"
        )
    record = {name: unescape_field(part) for name, part in zip(MENTION_FIELDS, parts)}
    return mention_from_dict(record)
