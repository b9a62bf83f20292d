from __future__ import annotations

from datetime import date

import pytest

from clinotate.engine import TemporalKind, extract_temporal, segment_sentences
from clinotate.model import Document


def extract(text: str, doc_date: date | None = None):
    doc = Document("d", text, doc_date)
    return extract_temporal(doc, segment_sentences(text))


def covering(text: str, mentions, phrase: str):
    for m in mentions:
        if text[m.span.start:m.span.end].lower() == phrase:
            return m
    raise AssertionError(f"no temporal mention covering {phrase!r}")


class TestRelative:
    def test_yesterday(self):
        text = "felt unwell yesterday"
        (m,) = extract(text, date(2021, 2, 18))
        assert m.kind is TemporalKind.RELATIVE_EXPRESSION
        assert m.resolved == date(2021, 2, 17)

    def test_three_days_ago_number_word(self):
        text = "started three days ago"
        (m,) = extract(text, date(2021, 2, 18))
        assert text[m.span.start:m.span.end] == "three days ago"
        assert m.resolved == date(2021, 2, 15)

    def test_numeric_days_ago(self):
        (m,) = extract("started 5 days ago", date(2021, 2, 18))
        assert m.resolved == date(2021, 2, 13)

    def test_weeks_ago(self):
        (m,) = extract("two weeks ago", date(2021, 2, 18))
        assert m.resolved == date(2021, 2, 4)

    def test_last_week(self):
        (m,) = extract("seen last week", date(2021, 2, 18))
        assert m.resolved == date(2021, 2, 11)

    def test_today(self):
        (m,) = extract("worse today", date(2021, 2, 18))
        assert m.resolved == date(2021, 2, 18)

    def test_unresolved_without_doc_date(self):
        (m,) = extract("felt unwell yesterday", None)
        assert m.kind is TemporalKind.RELATIVE_EXPRESSION
        assert m.resolved is None

    def test_word_boundaries(self):
        assert extract("todays plan unchanged", date(2021, 2, 18)) == []


class TestAbsolute:
    def test_iso_date(self):
        (m,) = extract("tested on 2021-02-01 at clinic")
        assert m.kind is TemporalKind.ABSOLUTE_DATE
        assert m.resolved == date(2021, 2, 1)

    def test_us_date(self):
        (m,) = extract("tested on 2/1/2021 at clinic")
        assert m.resolved == date(2021, 2, 1)

    def test_absolute_resolves_without_doc_date(self):
        (m,) = extract("follow up 2021-03-05")
        assert m.resolved == date(2021, 3, 5)

    def test_invalid_calendar_date_skipped(self):
        assert extract("code 2021-13-45 noted") == []


class TestMixtures:
    def test_demo_sentence(self):
        text = "new loss of taste today and three days ago."
        mentions = extract(text, date(2021, 2, 18))
        assert len(mentions) == 2
        assert covering(text, mentions, "today").resolved == date(2021, 2, 18)
        assert covering(text, mentions, "three days ago").resolved == date(2021, 2, 15)

    def test_ordered_output(self):
        text = "on 2021-01-01 then yesterday then 1/2/2021"
        mentions = extract(text, date(2021, 2, 18))
        starts = [m.span.start for m in mentions]
        assert starts == sorted(starts)
        assert len(mentions) == 3
