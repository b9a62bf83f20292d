from __future__ import annotations

import json
from datetime import date

import pytest
from hypothesis import given
from hypothesis import strategies as st

from clinotate.model import (
    Certainty,
    ConceptMention,
    Document,
    Experiencer,
    Span,
    escape_field,
    mention_from_dict,
    mention_from_tsv,
    mention_to_dict,
    mention_to_tsv,
    snippet,
    span_overlaps,
    unescape_field,
    validate_mention,
)


def spans(max_size: int = 200):
    return st.tuples(
        st.integers(min_value=0, max_value=max_size),
        st.integers(min_value=1, max_value=50),
    ).map(lambda t: Span(t[0], t[0] + t[1]))


class TestSpan:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            Span(3, 3)

    def test_rejects_negative_start(self):
        with pytest.raises(ValueError):
            Span(-1, 4)

    def test_rejects_inverted(self):
        with pytest.raises(ValueError):
            Span(5, 2)

    @pytest.mark.parametrize(
        "a, b, expected",
        [
            ((0, 5), (3, 9), True),
            ((0, 5), (5, 9), False),
            ((2, 4), (0, 10), True),
        ],
    )
    def test_overlap_examples(self, a, b, expected):
        assert span_overlaps(Span(*a), Span(*b)) is expected

    @given(spans(), spans())
    def test_overlap_symmetric(self, a, b):
        assert span_overlaps(a, b) == span_overlaps(b, a)

    @given(spans())
    def test_overlap_reflexive(self, a):
        assert span_overlaps(a, a)


class TestSnippet:
    def test_window_clipped_at_bounds(self):
        text = "had a dry cough and"
        s = Span(text.index("dry"), text.index("dry") + len("dry cough"))
        assert snippet(text, s, 6) == "had a dry cough and"

    def test_zero_window_is_slice(self):
        assert snippet("abcdef", Span(0, 6), 0) == "abcdef"

    def test_small_window(self):
        assert snippet("abcdef", Span(2, 4), 1) == "bcde"

    def test_out_of_bounds_raises(self):
        with pytest.raises(IndexError):
            snippet("abc", Span(1, 9), 0)

    @given(st.text(min_size=1, max_size=80), st.data())
    def test_zero_window_equals_slice(self, text, data):
        start = data.draw(st.integers(0, len(text) - 1))
        end = data.draw(st.integers(start + 1, len(text)))
        s = Span(start, end)
        assert snippet(text, s, 0) == text[start:end]


class TestValidateMention:
    def setup_method(self):
        self.doc = Document("d1", "patient has a fever today")

    def test_ok(self):
        m = ConceptMention(Span(14, 19), "FEVER", matched_text="fever")
        assert validate_mention(m, self.doc) == []

    def test_out_of_bounds(self):
        m = ConceptMention(Span(14, 99), "FEVER", matched_text="fever")
        violations = validate_mention(m, self.doc)
        assert any("out of bounds" in v for v in violations)

    def test_text_mismatch(self):
        m = ConceptMention(Span(14, 19), "FEVER", matched_text="chill")
        violations = validate_mention(m, self.doc)
        assert any("mismatch" in v for v in violations)

    def test_concept_set_membership(self):
        m = ConceptMention(Span(14, 19), "FEVER", matched_text="fever")
        assert validate_mention(m, self.doc, concepts=frozenset({"CHILL"}))
        assert not validate_mention(m, self.doc, concepts=frozenset({"FEVER"}))


class TestDocument:
    def test_doc_id_required(self):
        with pytest.raises(ValueError):
            Document("", "some text")

    def test_empty_text_allowed(self):
        assert Document("d", "").text == ""


mention_strategy = st.builds(
    ConceptMention,
    span=spans(),
    concept=st.from_regex(r"[A-Z][A-Z_]{0,10}", fullmatch=True),
    certainty=st.sampled_from(list(Certainty)),
    matched_text=st.text(max_size=30),
    experiencer=st.sampled_from(list(Experiencer)),
    normalized_date=st.one_of(st.none(), st.dates(date(1990, 1, 1), date(2040, 1, 1))),
    rule_id=st.text(max_size=15),
)


class TestCanonicalSerialization:
    @given(st.text(min_size=1, max_size=12).filter(str.strip), mention_strategy)
    def test_tsv_round_trip(self, doc_id, mention):
        doc_id_out, back = mention_from_tsv(mention_to_tsv(doc_id, mention))
        assert doc_id_out == doc_id
        assert back == mention

    @given(st.text(min_size=1, max_size=12).filter(str.strip), mention_strategy)
    def test_json_round_trip(self, doc_id, mention):
        wire = json.dumps(mention_to_dict(doc_id, mention))
        doc_id_out, back = mention_from_dict(json.loads(wire))
        assert doc_id_out == doc_id
        assert back == mention

    @given(st.text(max_size=60))
    def test_field_escaping_round_trip(self, value):
        assert unescape_field(escape_field(value)) == value

    def test_unknown_escape_passes_through(self):
        assert unescape_field(r"\bword\b") == r"\bword\b"

    def test_tsv_wrong_arity_rejected(self):
        with pytest.raises(ValueError):
            mention_from_tsv("a\tb\tc")
