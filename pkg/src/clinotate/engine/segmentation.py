"""Sentence segmentation and tokenization for clinical note text.

Clinical notes are template-heavy, so blank lines are treated as hard
sentence boundaries in addition to terminal punctuation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..model import Span

# Sentence splits happen after . ! ? when followed by whitespace and then an
# uppercase letter or digit.  Periods ending these abbreviations never split.
DEFAULT_ABBREVIATIONS = ("Dr.", "Mr.", "e.g.", "i.e.", "vs.")

_TOKEN_RE = re.compile(r"[^\W_]+|\S", re.UNICODE)
_TERMINATORS = ".!?"


@dataclass(frozen=True, slots=True)
class SentenceSpan:
    span: Span
    index: int


@dataclass(frozen=True, slots=True)
class TokenSpan:
    span: Span
    sentence_index: int


def segment_sentences(
    text: str,
    abbreviations: tuple[str, ...] = DEFAULT_ABBREVIATIONS,
) -> list[SentenceSpan]:
    """Split text into ordered, non-overlapping sentences covering every
    non-whitespace character.

    Sentence spans are trimmed to their first and last non-whitespace
    characters, so inter-sentence whitespace belongs to no sentence.
    """
    if not text.strip():
        return []
    abbrev_lower = tuple(a.casefold() for a in abbreviations)
    cuts = [0]
    n = len(text)
    i = 0
    while i < n:
        ch = text[i]
        if ch in _TERMINATORS:
            run_end = i + 1
            while run_end < n and text[run_end] in _TERMINATORS:
                run_end += 1
            if _splits_after(text, i, run_end, abbrev_lower):
                cuts.append(run_end)
            i = run_end
            continue
        if ch == "\n":
            j = i + 1
            while j < n and text[j] in " \t\r":
                j += 1
            if j < n and text[j] == "\n":
                cuts.append(i + 1)
                i = j + 1
                continue
        i += 1
    cuts.append(n)

    sentences: list[SentenceSpan] = []
    for a, b in zip(cuts, cuts[1:]):
        chunk = text[a:b]
        leading = len(chunk) - len(chunk.lstrip())
        trailing = len(chunk) - len(chunk.rstrip())
        start, end = a + leading, b - trailing
        if end > start:
            sentences.append(SentenceSpan(Span(start, end), len(sentences)))
    return sentences


def _splits_after(text: str, first: int, run_end: int, abbrev_lower: tuple[str, ...]) -> bool:
    n = len(text)
    if run_end >= n or not text[run_end].isspace():
        return False
    j = run_end
    while j < n and text[j].isspace():
        j += 1
    if j >= n or not (text[j].isupper() or text[j].isdigit()):
        return False
    if text[first] == ".":
        w = first
        while w > 0 and not text[w - 1].isspace():
            w -= 1
        word = text[w:run_end].casefold()
        for abbr in abbrev_lower:
            if word == abbr or (word.endswith(abbr) and not word[-len(abbr) - 1].isalnum()):
                return False
    return True


def tokenize(text: str, sentences: list[SentenceSpan]) -> list[TokenSpan]:
    """Tokens are maximal alphanumeric runs plus single non-space characters;
    each token nests in exactly one sentence."""
    tokens: list[TokenSpan] = []
    for sentence in sentences:
        for m in _TOKEN_RE.finditer(text, sentence.span.start, sentence.span.end):
            tokens.append(TokenSpan(Span(m.start(), m.end()), sentence.index))
    return tokens


def sentence_index_at(sentences: list[SentenceSpan], position: int) -> int:
    """Index of the sentence containing ``position``; falls back to the
    nearest earlier sentence for positions in inter-sentence whitespace."""
    best = 0
    for s in sentences:
        if position >= s.span.start:
            best = s.index
        if s.span.start <= position < s.span.end:
            return s.index
    return best
