"""Concept matching over compiled rule packages.

Literal phrases (dictionary terms and literal rule patterns) match
case-insensitively on token boundaries, with any whitespace run in the text
matching a single separator in the phrase.  Regex patterns match wherever
they say they do.  Overlapping matches of the same concept collapse to the
longest one; overlapping matches of different concepts all survive.
"""

from __future__ import annotations

from ..model import Certainty, ConceptMention, Document, Span
from ..ruleset import CompiledMatchers, normalize_phrase
from .segmentation import TokenSpan, segment_sentences, tokenize


def match_concepts(doc: Document, m: CompiledMatchers) -> list[ConceptMention]:
    """All concept matches in the document, certainty all positive."""
    sentences = segment_sentences(doc.text)
    tokens = tokenize(doc.text, sentences)
    return match_concepts_in_tokens(doc.text, tokens, m)


def match_concepts_in_tokens(
    text: str,
    tokens: list[TokenSpan],
    m: CompiledMatchers,
) -> list[ConceptMention]:
    raw: list[ConceptMention] = []

    if m.literal_index:
        folded = [text[t.span.start : t.span.end].casefold() for t in tokens]
        # Whether any whitespace separates token k-1 from token k.
        gap = [False] * len(tokens)
        for k in range(1, len(tokens)):
            gap[k] = tokens[k].span.start > tokens[k - 1].span.end
        for a in range(len(tokens)):
            candidate = folded[a]
            b = a
            while True:
                if len(candidate) > m.max_literal_len:
                    break
                for entry in m.literal_index.get(candidate, ()):
                    span = Span(tokens[a].span.start, tokens[b].span.end)
                    raw.append(ConceptMention(
                        span=span,
                        concept=entry.concept,
                        certainty=Certainty.POSITIVE,
                        matched_text=span.slice(text),
                        rule_id=entry.rule_id,
                    ))
                b += 1
                if b >= len(tokens):
                    break
                candidate += (" " if gap[b] else "") + folded[b]

    for matcher in m.regex_matchers:
        for hit in matcher.regex.finditer(text):
            if hit.end() <= hit.start():
                continue  # zero-width matches cannot form a mention
            span = Span(hit.start(), hit.end())
            raw.append(ConceptMention(
                span=span,
                concept=matcher.concept,
                certainty=Certainty.POSITIVE,
                matched_text=span.slice(text),
                rule_id=matcher.rule_id,
            ))

    return merge_same_concept(raw)


def merge_same_concept(mentions: list[ConceptMention]) -> list[ConceptMention]:
    """Collapse overlapping same-concept matches to the longest (leftmost on
    ties), then order the result by (start, end, concept)."""
    kept: list[ConceptMention] = []
    by_concept: dict[str, list[ConceptMention]] = {}
    for mention in mentions:
        by_concept.setdefault(mention.concept, []).append(mention)
    for concept in by_concept:
        group = sorted(by_concept[concept], key=lambda m: (-len(m.span), m.span.start, m.span.end))
        chosen: list[ConceptMention] = []
        for mention in group:
            if all(not mention.span.overlaps(c.span) for c in chosen):
                chosen.append(mention)
        kept.extend(chosen)
    kept.sort(key=lambda m: (m.span.start, m.span.end, m.concept))
    return kept
