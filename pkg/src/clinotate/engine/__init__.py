"""The processing layer: segmentation, concept matching, context, temporal.

``annotate`` is pure and reentrant; one compiled matcher may serve unbounded
concurrent calls.
"""

from __future__ import annotations

from dataclasses import replace

from ..model import ConceptMention, Document
from ..ruleset import CompiledMatchers
from .context import TriggerHit, apply_context, find_trigger_hits
from .matching import match_concepts, match_concepts_in_tokens, merge_same_concept
from .segmentation import (
    DEFAULT_ABBREVIATIONS,
    SentenceSpan,
    TokenSpan,
    segment_sentences,
    sentence_index_at,
    tokenize,
)
from .temporal import TemporalKind, TemporalMention, extract_temporal

__all__ = [
    "DEFAULT_ABBREVIATIONS",
    "SentenceSpan",
    "TemporalKind",
    "TemporalMention",
    "TokenSpan",
    "TriggerHit",
    "annotate",
    "annotate_with_temporal",
    "apply_context",
    "extract_temporal",
    "find_trigger_hits",
    "match_concepts",
    "match_concepts_in_tokens",
    "merge_same_concept",
    "segment_sentences",
    "sentence_index_at",
    "tokenize",
]


def annotate(doc: Document, m: CompiledMatchers) -> list[ConceptMention]:
    """Full pipeline over one document, deterministic and side-effect free:
    segment, tokenize, match, contextualize, attach dates, sort."""
    mentions, _ = annotate_with_temporal(doc, m)
    return mentions


def annotate_with_temporal(
    doc: Document,
    m: CompiledMatchers,
) -> tuple[list[ConceptMention], list[TemporalMention]]:
    """Like :func:`annotate` but also returns the document's date expressions
    (the service surfaces both)."""
    sentences = segment_sentences(doc.text)
    tokens = tokenize(doc.text, sentences)
    mentions = match_concepts_in_tokens(doc.text, tokens, m)
    mentions = apply_context(doc, sentences, mentions, m, tokens=tokens)
    temporal = extract_temporal(doc, sentences)

    if temporal and mentions:
        by_sentence: dict[int, list[TemporalMention]] = {}
        for t in temporal:
            by_sentence.setdefault(sentence_index_at(sentences, t.span.start), []).append(t)
        dated: list[ConceptMention] = []
        for mention in mentions:
            sent = sentence_index_at(sentences, mention.span.start)
            nearest = _nearest(mention, by_sentence.get(sent, []))
            if nearest is not None:
                mention = replace(mention, normalized_date=nearest.resolved)
            dated.append(mention)
        mentions = dated

    mentions.sort(key=lambda mn: (mn.span.start, mn.span.end, mn.concept))
    return mentions, temporal


def _nearest(mention: ConceptMention, candidates: list[TemporalMention]) -> TemporalMention | None:
    best: TemporalMention | None = None
    best_key: tuple[int, int] | None = None
    for t in candidates:
        if t.span.start >= mention.span.end:
            distance = t.span.start - mention.span.end
        elif t.span.end <= mention.span.start:
            distance = mention.span.start - t.span.end
        else:
            distance = 0
        key = (distance, t.span.start)
        if best_key is None or key < best_key:
            best, best_key = t, key
    return best
