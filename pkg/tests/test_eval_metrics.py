from __future__ import annotations

import random

import pytest

from clinotate.evaluation import (
    GoldAnnotation,
    MatchMode,
    SystemMention,
    compute_iaa,
    compute_metrics,
    f1_from_pr,
    match_corpus,
    match_mentions,
)
from clinotate.model import Certainty, Span

from oracles import recount_precision_recall_f1


def gold(start, end, concept, certainty=Certainty.POSITIVE, doc_id="d"):
    return GoldAnnotation(doc_id, Span(start, end), concept, certainty)


def system(start, end, concept, certainty=Certainty.POSITIVE, doc_id="d"):
    return SystemMention(doc_id, Span(start, end), concept, certainty)


# Published multi-site benchmark rows: (precision, recall, reported_f1).
# Recomputing F1 from the 3-decimal P/R reproduces the reported value to one
# unit in the third decimal (the reported figures carry their own rounding).
PUBLISHED_PR_F1 = [
    (0.882, 0.869, 0.876),
    (0.789, 0.639, 0.706),
    (0.698, 0.714, 0.706),
    (0.664, 0.643, 0.653),
    (0.658, 0.735, 0.694),
    (0.534, 0.438, 0.481),
    (0.863, 0.908, 0.884),
    (0.824, 0.681, 0.746),
    (0.696, 0.859, 0.769),
    (0.662, 0.734, 0.696),
    (0.718, 0.918, 0.806),
    (0.562, 0.456, 0.504),
]


class TestF1FromPr:
    @pytest.mark.parametrize("p, r, expected", PUBLISHED_PR_F1)
    def test_published_cells(self, p, r, expected):
        value = f1_from_pr(p, r)
        assert value is not None
        assert abs(value - expected) <= 0.001

    def test_perfect(self):
        assert f1_from_pr(1.0, 1.0) == 1.0

    def test_both_zero_is_absent(self):
        assert f1_from_pr(0.0, 0.0) is None

    def test_exact_values_frozen(self):
        assert f1_from_pr(0.882, 0.869) == pytest.approx(0.8754517, abs=1e-7)
        assert f1_from_pr(0.696, 0.859) == pytest.approx(0.7689569, abs=1e-7)
        assert f1_from_pr(0.718, 0.918) == pytest.approx(0.8057751, abs=1e-7)


class TestComputeMetrics:
    def test_simple_counts(self):
        gold_list = [gold(i * 10, i * 10 + 4, "A") for i in range(10)]
        system_list = [system(i * 10, i * 10 + 4, "A") for i in range(8)]
        system_list += [system(500 + i * 10, 504 + i * 10, "A") for i in range(2)]
        report = compute_metrics(match_mentions(gold_list, system_list))
        assert (report.tp, report.fp, report.fn) == (8, 2, 2)
        assert report.precision == pytest.approx(0.8)
        assert report.recall == pytest.approx(0.8)
        assert report.f1 == pytest.approx(0.8)

    def test_degenerate_all_absent(self):
        report = compute_metrics(match_mentions([], []))
        assert report.precision is None
        assert report.recall is None
        assert report.f1 is None

    def test_per_concept_breakdown(self):
        gold_list = [gold(0, 5, "A"), gold(10, 15, "B")]
        system_list = [system(0, 5, "A"), system(30, 35, "B")]
        report = compute_metrics(match_mentions(gold_list, system_list))
        assert report.per_concept["A"].tp == 1
        assert report.per_concept["B"].tp == 0
        assert report.per_concept["B"].fp == 1
        assert report.per_concept["B"].fn == 1

    def test_matches_recount_oracle_on_planted_counts(self):
        rng = random.Random(271828)
        for _ in range(100):
            tp = rng.randint(0, 30)
            fp = rng.randint(0, 30)
            fn = rng.randint(0, 30)
            gold_list = []
            system_list = []
            cursor = 0
            for _ in range(tp):
                gold_list.append(gold(cursor, cursor + 5, "A"))
                system_list.append(system(cursor + 1, cursor + 6, "A"))
                cursor += 20
            for _ in range(fn):
                gold_list.append(gold(cursor, cursor + 5, "A"))
                cursor += 20
            for _ in range(fp):
                system_list.append(system(cursor, cursor + 5, "A"))
                cursor += 20
            report = compute_metrics(match_mentions(gold_list, system_list))
            assert (report.tp, report.fp, report.fn) == (tp, fp, fn)
            expected = recount_precision_recall_f1(tp, fp, fn)
            assert (report.precision, report.recall, report.f1) == expected


class TestIaa:
    def test_identical_sets(self):
        corpus = {"d": [gold(0, 5, "A"), gold(10, 15, "B")]}
        assert compute_iaa(corpus, corpus) == 1.0

    def test_fully_disjoint_is_zero(self):
        a = {"d": [gold(0, 5, "A")]}
        b = {"d": [gold(50, 55, "A")]}
        assert compute_iaa(a, b) == 0.0

    def test_planted_half_overlap(self):
        # annotator a sees both mentions, b sees one: directional F1s are
        # 2/3 in both directions, so agreement is 2/3
        a = {"d": [gold(0, 5, "A"), gold(10, 15, "A")]}
        b = {"d": [gold(0, 5, "A")]}
        expected_one_way = recount_precision_recall_f1(1, 0, 1)[2]
        expected_other = recount_precision_recall_f1(1, 1, 0)[2]
        assert expected_one_way is not None and expected_other is not None
        assert compute_iaa(a, b) == pytest.approx((expected_one_way + expected_other) / 2)

    def test_symmetric_exactly(self):
        rng = random.Random(8)
        a = {}
        b = {}
        for d in range(6):
            doc = f"d{d}"
            a[doc] = [gold(rng.randint(0, 50), rng.randint(51, 80), rng.choice("AB"),
                           doc_id=doc) for _ in range(rng.randint(0, 5))]
            b[doc] = [gold(rng.randint(0, 50), rng.randint(51, 80), rng.choice("AB"),
                           doc_id=doc) for _ in range(rng.randint(0, 5))]
        assert compute_iaa(a, b) == compute_iaa(b, a)

    def test_different_document_sets_rejected(self):
        with pytest.raises(ValueError):
            compute_iaa({"d1": []}, {"d2": []})

    def test_both_empty_is_perfect(self):
        assert compute_iaa({"d": []}, {"d": []}) == 1.0


class TestModeComparisonOnCorpus:
    def test_span_certainty_stricter_on_realistic_corpus(self):
        gold_map = {"n": [gold(0, 5, "A", Certainty.NEGATED, "n"),
                          gold(20, 25, "B", Certainty.POSITIVE, "n")]}
        system_map = {"n": [system(0, 5, "A", Certainty.POSITIVE, "n"),
                            system(20, 25, "B", Certainty.POSITIVE, "n")]}
        span = compute_metrics(match_corpus(gold_map, system_map, MatchMode.SPAN))
        strict = compute_metrics(match_corpus(gold_map, system_map, MatchMode.SPAN_CERTAINTY))
        assert span.tp == 2
        assert strict.tp == 1
