"""Trigger-scoped certainty and experiencer assignment.

Pre-direction triggers reach forward from the trigger to the earlier of the
end of their sentence window, the next scope terminator, or the next
same-direction trigger; post-direction triggers mirror backward.  Pseudo
triggers produce no scope of their own and only neutralize literal triggers
they textually contain.  When several rules claim one mention, the highest
priority wins within each attribute dimension (certainty vs. experiencer),
with ties going to the nearest trigger.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..model import Certainty, ConceptMention, Document, Experiencer, Span
from ..ruleset import CompiledMatchers, CompiledTrigger, ContextDirection, ContextModifier
from .segmentation import SentenceSpan, TokenSpan, sentence_index_at, tokenize

_CERTAINTY_FOR = {
    ContextModifier.NEG: Certainty.NEGATED,
    ContextModifier.POSS: Certainty.POSSIBLE,
    ContextModifier.HYPO: Certainty.HYPOTHETICAL,
}


@dataclass(frozen=True, slots=True)
class TriggerHit:
    span: Span
    trigger: CompiledTrigger
    literal: bool


def apply_context(
    doc: Document,
    sentences: list[SentenceSpan],
    mentions: list[ConceptMention],
    m: CompiledMatchers,
    tokens: list[TokenSpan] | None = None,
) -> list[ConceptMention]:
    """Relabel mention certainty/experiencer; never adds or removes mentions."""
    if not mentions or not m.triggers:
        return list(mentions)
    if tokens is None:
        tokens = tokenize(doc.text, sentences)

    hits = find_trigger_hits(doc.text, tokens, m)
    active = [h for h in hits if not h.trigger.pseudo]
    termin_hits = [h for h in active if h.trigger.cuts_scope]

    scoped: list[tuple[TriggerHit, Span]] = []
    for hit in active:
        if hit.trigger.cuts_scope:
            continue
        scope = _scope_for(hit, sentences, active, termin_hits, len(doc.text))
        if scope is not None:
            scoped.append((hit, scope))

    out: list[ConceptMention] = []
    for mention in mentions:
        certainty_claims: list[tuple[int, int, int, str, ContextModifier]] = []
        experiencer_claims = False
        for hit, scope in scoped:
            if not (scope.start <= mention.span.start and mention.span.end <= scope.end):
                continue
            if hit.trigger.direction is ContextDirection.PRE:
                distance = mention.span.start - hit.span.end
            else:
                distance = hit.span.start - mention.span.end
            if hit.trigger.modifier is ContextModifier.EXP_OTHER:
                experiencer_claims = True
            elif hit.trigger.modifier in _CERTAINTY_FOR:
                certainty_claims.append(
                    (-hit.trigger.priority, distance, hit.span.start,
                     hit.trigger.rule_id, hit.trigger.modifier)
                )
        changed = mention
        if certainty_claims:
            certainty_claims.sort()
            changed = replace(changed, certainty=_CERTAINTY_FOR[certainty_claims[0][4]])
        if experiencer_claims:
            changed = replace(changed, experiencer=Experiencer.OTHER)
        out.append(changed)
    return out


def find_trigger_hits(
    text: str,
    tokens: list[TokenSpan],
    m: CompiledMatchers,
) -> list[TriggerHit]:
    """All trigger matches, with pseudo-neutralized literal hits removed."""
    phrase_map: dict[str, list[CompiledTrigger]] = {}
    for trigger in m.triggers:
        if trigger.phrase is not None:
            phrase_map.setdefault(trigger.phrase, []).append(trigger)

    hits: list[TriggerHit] = []
    if phrase_map:
        max_len = max(len(p) for p in phrase_map)
        folded = [text[t.span.start : t.span.end].casefold() for t in tokens]
        gap = [False] * len(tokens)
        for k in range(1, len(tokens)):
            gap[k] = tokens[k].span.start > tokens[k - 1].span.end
        for a in range(len(tokens)):
            candidate = folded[a]
            b = a
            while True:
                if len(candidate) > max_len:
                    break
                for trigger in phrase_map.get(candidate, ()):
                    hits.append(TriggerHit(
                        Span(tokens[a].span.start, tokens[b].span.end), trigger, literal=True,
                    ))
                b += 1
                if b >= len(tokens):
                    break
                candidate += (" " if gap[b] else "") + folded[b]

    for trigger in m.triggers:
        if trigger.regex is None:
            continue
        for hit in trigger.regex.finditer(text):
            if hit.end() > hit.start():
                hits.append(TriggerHit(Span(hit.start(), hit.end()), trigger, literal=False))

    pseudo_spans = [h.span for h in hits if h.trigger.pseudo]
    if pseudo_spans:
        hits = [
            h for h in hits
            if h.trigger.pseudo
            or not h.literal
            or not any(p.contains(h.span) for p in pseudo_spans)
        ]
    hits.sort(key=lambda h: (h.span.start, h.span.end, h.trigger.rule_id))
    return hits


def _scope_for(
    hit: TriggerHit,
    sentences: list[SentenceSpan],
    active: list[TriggerHit],
    termin_hits: list[TriggerHit],
    text_len: int,
) -> Span | None:
    if not sentences:
        return None
    sent = sentence_index_at(sentences, hit.span.start)
    window = hit.trigger.window_sentences
    direction = hit.trigger.direction
    if direction is ContextDirection.PRE:
        start = hit.span.end
        end = sentences[min(sent + window - 1, len(sentences) - 1)].span.end
        for other in termin_hits:
            if other.span.start >= hit.span.end:
                end = min(end, other.span.start)
        for other in active:
            if other is hit or other.trigger.cuts_scope:
                continue
            if other.trigger.direction is direction and other.span.start >= hit.span.end:
                end = min(end, other.span.start)
    else:
        end = hit.span.start
        start = sentences[max(sent - window + 1, 0)].span.start
        for other in termin_hits:
            if other.span.end <= hit.span.start:
                start = max(start, other.span.end)
        for other in active:
            if other is hit or other.trigger.cuts_scope:
                continue
            if other.trigger.direction is direction and other.span.end <= hit.span.start:
                start = max(start, other.span.end)
    if end <= start:
        return None
    return Span(start, min(end, text_len))
