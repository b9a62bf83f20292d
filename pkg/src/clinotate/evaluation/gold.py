"""Gold-standard corpus loading from brat standoff (.txt/.ann) pairs.

Only the annotation shapes used by mention-level evaluation are modeled:
T lines carry typed spans, A lines carry a Certainty attribute.  The text
captured on each T line must equal the .txt slice at its offsets, which
catches offset drift from editing or de-identification.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from ..model import Certainty, Span

_T_LINE = re.compile(r"^(T\d+)\t(\S+) (\d+) (\d+)\t(.*)$")
_A_LINE = re.compile(r"^(A\d+)\t(\S+) (T\d+)(?: (\S+))?$")
# Relation/event/normalization/note lines carry nothing used by
# mention-level scoring and are skipped.
_SKIPPED_PREFIXES = ("R", "E", "M", "N", "#")


class CorpusError(Exception):
    """Integrity or vocabulary problem in a gold corpus, located by document
    and line."""

    def __init__(self, message: str, doc_id: str = "", line: int | None = None):
        self.doc_id = doc_id
        self.line = line
        where = f"{doc_id}.ann:{line}: " if doc_id and line is not None else ""
        super().__init__(where + message)
        self.message = message


@dataclass(frozen=True, slots=True)
class GoldAnnotation:
    doc_id: str
    span: Span
    concept: str
    certainty: Certainty = Certainty.POSITIVE
    annotator: str = ""


def load_brat_corpus(directory, annotator: str = "") -> dict[str, list[GoldAnnotation]]:
    """Load every ``<id>.txt`` / ``<id>.ann`` pair under ``directory``.

    Returns doc_id -> annotations ordered by (start, end, concept).
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise CorpusError(f"gold corpus directory not found: {directory}")
    corpus: dict[str, list[GoldAnnotation]] = {}
    for txt_path in sorted(directory.glob("*.txt")):
        doc_id = txt_path.stem
        ann_path = txt_path.with_suffix(".ann")
        if not ann_path.exists():
            raise CorpusError(f"missing annotation file for document {doc_id}", doc_id=doc_id)
        text = txt_path.read_text(encoding="utf-8")
        corpus[doc_id] = parse_ann(ann_path.read_text(encoding="utf-8"), text,
                                   doc_id=doc_id, annotator=annotator)
    return corpus


def parse_ann(content: str, text: str, doc_id: str, annotator: str = "") -> list[GoldAnnotation]:
    spans: dict[str, GoldAnnotation] = {}
    certainties: dict[str, Certainty] = {}
    for lineno, raw in enumerate(content.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip():
            continue
        m = _T_LINE.match(line)
        if m:
            t_id, concept, start, end, captured = m.groups()
            start_i, end_i = int(start), int(end)
            if end_i <= start_i or end_i > len(text):
                raise CorpusError(
                    f"annotation {t_id} offsets [{start_i}, {end_i}) out of bounds "
                    f"for text of length {len(text)}",
                    doc_id=doc_id, line=lineno,
                )
            actual = text[start_i:end_i]
            if actual != captured:
                raise CorpusError(
                    f"annotation {t_id} text mismatch: file says {captured!r} "
                    f"but offsets slice to {actual!r}",
                    doc_id=doc_id, line=lineno,
                )
            spans[t_id] = GoldAnnotation(
                doc_id=doc_id, span=Span(start_i, end_i), concept=concept,
                annotator=annotator,
            )
            continue
        m = _A_LINE.match(line)
        if m:
            a_id, attr, t_ref, value = m.groups()
            if t_ref not in spans:
                raise CorpusError(
                    f"attribute {a_id} references unknown annotation {t_ref}",
                    doc_id=doc_id, line=lineno,
                )
            if attr.lower() != "certainty":
                continue
            if value is None:
                raise CorpusError(f"attribute {a_id} has no value", doc_id=doc_id, line=lineno)
            try:
                certainties[t_ref] = Certainty.from_string(value)
            except ValueError as exc:
                raise CorpusError(str(exc), doc_id=doc_id, line=lineno) from exc
            continue
        if line[0] in _SKIPPED_PREFIXES:
            continue
        raise CorpusError(f"unparseable line: {line!r}", doc_id=doc_id, line=lineno)

    out = []
    for t_id, ann in spans.items():
        certainty = certainties.get(t_id, Certainty.POSITIVE)
        out.append(GoldAnnotation(ann.doc_id, ann.span, ann.concept, certainty, ann.annotator))
    out.sort(key=lambda a: (a.span.start, a.span.end, a.concept))
    return out
