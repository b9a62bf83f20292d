"""`eval` command: run, iaa, split, aggregate."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .aggregate import (
    AggregateRow,
    AggregateTable,
    aggregate_site_reports,
    load_site_reports,
    render_table,
    table_to_csv,
)
from .errors import categorize_errors, read_error_labels
from .gold import CorpusError, load_brat_corpus
from .matching import MatchMode, match_corpus
from .metrics import compute_iaa, compute_metrics
from .splitting import SplitSpec, split_corpus
from .system_input import load_system_mentions

_MODES = {"span": MatchMode.SPAN, "span+certainty": MatchMode.SPAN_CERTAINTY}


@click.group()
def main() -> None:
    """Mention-level evaluation against a gold corpus."""


@main.command("run")
@click.option("--gold", "gold_dir", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--system", "system_file", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--mode", type=click.Choice(sorted(_MODES)), default="span", show_default=True)
@click.option("--error-labels", type=click.Path(exists=True, dir_okay=False),
              help="Reviewer sidecar of error categories to tally.")
@click.option("--out-csv", type=click.Path(dir_okay=False), help="Also write rows as CSV.")
def run(gold_dir, system_file, mode, error_labels, out_csv) -> None:
    """Score a system output file against a brat gold directory."""
    try:
        gold = load_brat_corpus(gold_dir)
        system = load_system_mentions(system_file)
    except (CorpusError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    match_mode = _MODES[mode]
    result = match_corpus(gold, system, match_mode)
    report = compute_metrics(result)

    rows = [AggregateRow(
        site="local", dataset=Path(gold_dir).name, mode=match_mode,
        tp=report.tp, fp=report.fp, fn=report.fn,
        precision=report.precision, recall=report.recall, f1=report.f1,
    )]
    table = AggregateTable(tuple(rows))
    click.echo(render_table(table), nl=False)
    if report.per_concept:
        click.echo("\nper concept:")
        for concept, c in sorted(report.per_concept.items()):
            click.echo(
                f"  {concept}: tp={c.tp} fp={c.fp} fn={c.fn} "
                f"p={_fmt(c.precision)} r={_fmt(c.recall)} f1={_fmt(c.f1)}"
            )
    if error_labels:
        try:
            labels = read_error_labels(error_labels)
            tallies = categorize_errors(result, labels)
        except ValueError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)
        click.echo("\nerror categories:")
        for category, (count, percent) in sorted(tallies.items(), key=lambda kv: -kv[1][0]):
            click.echo(f"  {category.value}: {count} ({percent}%)")
    if out_csv:
        Path(out_csv).write_text(table_to_csv(table), encoding="utf-8")


@main.command("iaa")
@click.option("--a", "dir_a", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--b", "dir_b", required=True, type=click.Path(exists=True, file_okay=False))
def iaa(dir_a, dir_b) -> None:
    """Inter-annotator agreement between two brat directories."""
    try:
        corpus_a = load_brat_corpus(dir_a, annotator="a")
        corpus_b = load_brat_corpus(dir_b, annotator="b")
        score = compute_iaa(corpus_a, corpus_b)
    except (CorpusError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    click.echo(f"iaa_f1={score:.4f}")


@main.command("split")
@click.option("--ids", "ids_file", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--seed", required=True, type=int)
@click.option("--sizes", required=True, help="Comma-separated label=size pairs.")
@click.option("--out-dir", type=click.Path(file_okay=False),
              help="Write one id list file per part.")
def split(ids_file, seed, sizes, out_dir) -> None:
    """Deterministically split a list of document ids."""
    doc_ids = [line.strip() for line in Path(ids_file).read_text(encoding="utf-8").splitlines()
               if line.strip()]
    part_sizes = []
    try:
        for piece in sizes.split(","):
            label, _, size = piece.partition("=")
            if not label or not size:
                raise ValueError(f"bad sizes piece {piece!r}, expected label=size")
            part_sizes.append((label.strip(), int(size)))
        parts = split_corpus(doc_ids, SplitSpec(seed=seed, part_sizes=tuple(part_sizes)))
    except ValueError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    for label, ids in parts.items():
        click.echo(f"{label}: {len(ids)} documents")
        if out_dir:
            target = Path(out_dir)
            target.mkdir(parents=True, exist_ok=True)
            (target / f"{label}.txt").write_text("\n".join(ids) + "\n", encoding="utf-8")


@main.command("aggregate")
@click.option("--reports", "reports_dir", required=True,
              type=click.Path(exists=True, file_okay=False))
@click.option("--out-csv", type=click.Path(dir_okay=False))
def aggregate(reports_dir, out_csv) -> None:
    """Consolidate a directory of site report JSON files."""
    try:
        reports = load_site_reports(reports_dir)
        table = aggregate_site_reports(reports)
    except (ValueError, KeyError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    click.echo(render_table(table), nl=False)
    if out_csv:
        Path(out_csv).write_text(table_to_csv(table), encoding="utf-8")


def _fmt(value) -> str:
    return f"{value:.3f}" if value is not None else "-"


if __name__ == "__main__":
    main()
