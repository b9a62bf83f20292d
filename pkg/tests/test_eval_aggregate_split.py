from __future__ import annotations

import pytest

from clinotate.evaluation import (
    ErrorCategory,
    MatchMode,
    SiteReport,
    SplitSpec,
    aggregate_site_reports,
    load_site_reports,
    metrics_from_counts,
    render_table,
    site_report_from_json,
    site_report_to_json,
    split_corpus,
)

from oracles import recount_precision_recall_f1


def make_report(site: str, tp: int, fp: int, fn: int,
                tp_c: int | None = None, fp_c: int | None = None, fn_c: int | None = None,
                dataset: str = "test") -> SiteReport:
    return SiteReport(
        site=site,
        dataset=dataset,
        metrics_span=metrics_from_counts(tp, fp, fn, MatchMode.SPAN),
        metrics_span_certainty=metrics_from_counts(
            tp if tp_c is None else tp_c,
            fp if fp_c is None else fp_c,
            fn if fn_c is None else fn_c,
            MatchMode.SPAN_CERTAINTY,
        ),
        error_tallies={ErrorCategory.NLP_NOT_COMPLETE: fn},
    )


class TestSplitCorpus:
    def test_three_way_split(self):
        ids = [f"note{i:03d}" for i in range(313)]
        spec = SplitSpec(seed=42, part_sizes=(("dev", 101), ("val", 105), ("test", 107)))
        parts = split_corpus(ids, spec)
        assert [len(parts[label]) for label in ("dev", "val", "test")] == [101, 105, 107]
        combined = parts["dev"] + parts["val"] + parts["test"]
        assert sorted(combined) == sorted(ids)
        assert len(set(combined)) == 313

    def test_two_way_split(self):
        ids = [f"n{i}" for i in range(20)]
        parts = split_corpus(ids, SplitSpec(seed=1, part_sizes=(("train", 10), ("test", 10))))
        assert len(parts["train"]) == 10
        assert len(parts["test"]) == 10
        assert set(parts["train"]).isdisjoint(parts["test"])

    def test_empty(self):
        assert split_corpus([], SplitSpec(seed=0, part_sizes=())) == {}

    def test_stable_across_runs(self):
        ids = [f"n{i}" for i in range(50)]
        spec = SplitSpec(seed=9, part_sizes=(("a", 20), ("b", 30)))
        assert split_corpus(ids, spec) == split_corpus(ids, spec)

    def test_different_seed_differs(self):
        ids = [f"n{i}" for i in range(50)]
        a = split_corpus(ids, SplitSpec(seed=1, part_sizes=(("a", 25), ("b", 25))))
        b = split_corpus(ids, SplitSpec(seed=2, part_sizes=(("a", 25), ("b", 25))))
        assert a != b

    def test_size_mismatch_rejected(self):
        with pytest.raises(ValueError):
            split_corpus(["a", "b"], SplitSpec(seed=0, part_sizes=(("x", 3),)))


class TestAggregate:
    def test_passthrough_plus_pooled(self):
        report = make_report("mayo", tp=80, fp=10, fn=12)
        table = aggregate_site_reports([report])
        span_rows = [r for r in table.rows if r.mode is MatchMode.SPAN]
        assert len(span_rows) == 2
        site_row, pooled_row = span_rows
        assert (site_row.precision, site_row.recall, site_row.f1) == (
            pooled_row.precision, pooled_row.recall, pooled_row.f1,
        )

    def test_pooled_micro_average_from_summed_counts(self):
        a = make_report("site_a", tp=10, fp=5, fn=5)
        b = make_report("site_b", tp=30, fp=10, fn=20)
        table = aggregate_site_reports([a, b])
        (pooled,) = [r for r in table.pooled_rows() if r.mode is MatchMode.SPAN]
        expected = recount_precision_recall_f1(40, 15, 25)
        assert (pooled.precision, pooled.recall, pooled.f1) == expected

    def test_duplicate_site_dataset_rejected(self):
        with pytest.raises(ValueError):
            aggregate_site_reports([make_report("x", 1, 1, 1), make_report("x", 2, 2, 2)])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            aggregate_site_reports([])

    def test_render_contains_all_sites(self):
        table = aggregate_site_reports([
            make_report("alpha", 5, 1, 1), make_report("beta", 6, 2, 2),
        ])
        rendered = render_table(table)
        assert "alpha" in rendered and "beta" in rendered and "ALL" in rendered


class TestSiteReportJson:
    def test_round_trip(self):
        report = make_report("mayo", tp=80, fp=10, fn=12, tp_c=70, fp_c=20, fn_c=22)
        back = site_report_from_json(site_report_to_json(report))
        assert back.site == report.site
        assert back.metrics_span == report.metrics_span
        assert back.metrics_span_certainty == report.metrics_span_certainty
        assert back.error_tallies == dict(report.error_tallies)

    def test_contains_no_text_fields(self):
        wire = site_report_to_json(make_report("mayo", 3, 1, 1))
        for banned in ("snippet", "matched_text", "lexical_variant", "note_text"):
            assert banned not in wire

    def test_load_directory(self, tmp_path):
        for name in ("a", "b"):
            (tmp_path / f"{name}.json").write_text(
                site_report_to_json(make_report(name, 4, 2, 2)), encoding="utf-8",
            )
        reports = load_site_reports(tmp_path)
        assert [r.site for r in reports] == ["a", "b"]
