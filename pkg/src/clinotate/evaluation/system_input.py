"""Loading system-side mentions for scoring.

Two file shapes are accepted: the pipeline's delimited NOTE_NLP output, and
the canonical mention form (tab-separated or JSON lines).  The shape is
sniffed from the first line.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

from ..backbone.records import certainty_from_modifiers, note_nlp_from_row
from ..model import MENTION_FIELDS, mention_from_dict, mention_from_tsv
from .matching import SystemMention


def load_system_mentions(path) -> dict[str, list[SystemMention]]:
    path = Path(path)
    content = path.read_text(encoding="utf-8")
    lines = [line for line in content.split("\n") if line.strip()]
    if not lines:
        return {}
    first = lines[0]
    if first.lstrip().startswith("{"):
        return _from_json_lines(lines)
    if "note_nlp_id" in first and "," in first:
        return _from_note_nlp_csv(content)
    if first.replace(" ", "").startswith("doc_id\tconcept") or first.count("\t") == len(MENTION_FIELDS) - 1:
        return _from_canonical_tsv(lines)
    raise ValueError(f"{path}: unrecognized system mention file format")


def _group(pairs) -> dict[str, list[SystemMention]]:
    grouped: dict[str, list[SystemMention]] = {}
    for mention in pairs:
        grouped.setdefault(mention.doc_id, []).append(mention)
    for mentions in grouped.values():
        mentions.sort(key=lambda m: (m.span.start, m.span.end, m.concept))
    return grouped


def _from_note_nlp_csv(content: str) -> dict[str, list[SystemMention]]:
    reader = csv.DictReader(content.splitlines())
    mentions = []
    for row in reader:
        record = note_nlp_from_row(row)
        mentions.append(SystemMention(
            doc_id=str(record.note_id),
            span=record.offset_span,
            concept=record.note_nlp_concept,
            certainty=certainty_from_modifiers(record.term_modifiers),
        ))
    return _group(mentions)


def _from_canonical_tsv(lines: list[str]) -> dict[str, list[SystemMention]]:
    mentions = []
    for line in lines:
        if line.replace(" ", "").startswith("doc_id\tconcept"):
            continue  # optional header
        doc_id, mention = mention_from_tsv(line)
        mentions.append(SystemMention(
            doc_id=doc_id, span=mention.span,
            concept=mention.concept, certainty=mention.certainty,
        ))
    return _group(mentions)


def _from_json_lines(lines: list[str]) -> dict[str, list[SystemMention]]:
    mentions = []
    for line in lines:
        doc_id, mention = mention_from_dict(json.loads(line))
        mentions.append(SystemMention(
            doc_id=doc_id, span=mention.span,
            concept=mention.concept, certainty=mention.certainty,
        ))
    return _group(mentions)
