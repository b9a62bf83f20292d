"""CDM-shaped note input and annotation output rows.

The note tables are represented as flat files with CDM-named columns; the
output header keeps the columns a CDM loader expects, emitting the ones this
engine does not populate as empty.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date

from ..model import Certainty, ConceptMention, Experiencer, Span, snippet

NOTE_COLUMNS = ("note_id", "person_id", "note_date", "note_title", "note_text")

NOTE_NLP_COLUMNS = (
    "note_nlp_id",
    "note_id",
    "section_concept_id",
    "snippet",
    "offset",
    "lexical_variant",
    "note_nlp_concept",
    "note_nlp_source_concept_id",
    "nlp_system",
    "nlp_date",
    "nlp_datetime",
    "term_exists",
    "term_temporal",
    "term_modifiers",
)

SNIPPET_WINDOW = 40


@dataclass(frozen=True, slots=True)
class NoteRecord:
    note_id: int
    person_id: int
    note_date: date
    note_title: str
    note_text: str


@dataclass(frozen=True, slots=True)
class NoteNlpRecord:
    note_nlp_id: int
    note_id: int
    snippet: str
    offset: str
    lexical_variant: str
    note_nlp_concept: str
    nlp_system: str
    nlp_date: date
    term_exists: bool
    term_temporal: str
    term_modifiers: str

    @property
    def offset_span(self) -> Span:
        start, _, end = self.offset.partition("-")
        return Span(int(start), int(end))


def mention_to_note_nlp(
    m: ConceptMention,
    note: NoteRecord,
    seq: int,
    system_tag: str,
    run_date: date,
) -> NoteNlpRecord:
    """Project one mention onto an output row.

    ``term_exists`` is true only for positive, patient-experienced mentions;
    everything else is carried in ``term_modifiers``.
    """
    return NoteNlpRecord(
        note_nlp_id=seq,
        note_id=note.note_id,
        snippet=snippet(note.note_text, m.span, SNIPPET_WINDOW),
        offset=f"{m.span.start}-{m.span.end}",
        lexical_variant=m.matched_text,
        note_nlp_concept=m.concept,
        nlp_system=system_tag,
        nlp_date=run_date,
        term_exists=(m.certainty is Certainty.POSITIVE and m.experiencer is Experiencer.PATIENT),
        term_temporal=m.normalized_date.isoformat() if m.normalized_date else "",
        term_modifiers=f"certainty={m.certainty.value};experiencer={m.experiencer.value}",
    )


def note_nlp_to_row(r: NoteNlpRecord) -> list[str]:
    return [
        str(r.note_nlp_id),
        str(r.note_id),
        "",  # section_concept_id: not populated
        r.snippet,
        r.offset,
        r.lexical_variant,
        r.note_nlp_concept,
        "",  # note_nlp_source_concept_id: not populated
        r.nlp_system,
        r.nlp_date.isoformat(),
        "",  # nlp_datetime: not populated
        "true" if r.term_exists else "false",
        r.term_temporal,
        r.term_modifiers,
    ]


def note_nlp_from_row(row: dict[str, str]) -> NoteNlpRecord:
    return NoteNlpRecord(
        note_nlp_id=int(row["note_nlp_id"]),
        note_id=int(row["note_id"]),
        snippet=row.get("snippet", ""),
        offset=row["offset"],
        lexical_variant=row.get("lexical_variant", ""),
        note_nlp_concept=row["note_nlp_concept"],
        nlp_system=row.get("nlp_system", ""),
        nlp_date=date.fromisoformat(row["nlp_date"]) if row.get("nlp_date") else date(1970, 1, 1),
        term_exists=row.get("term_exists", "").lower() == "true",
        term_temporal=row.get("term_temporal", ""),
        term_modifiers=row.get("term_modifiers", ""),
    )


def certainty_from_modifiers(term_modifiers: str) -> Certainty:
    for piece in term_modifiers.split(";"):
        key, _, value = piece.partition("=")
        if key.strip() == "certainty" and value:
            return Certainty.from_string(value)
    return Certainty.POSITIVE
