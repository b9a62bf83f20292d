"""End-to-end run: ingest notes, annotate, persist output rows.

Annotation fans out to worker threads; output is sorted before the single
writer emits it, so results are byte-identical regardless of parallelism.
The sink is written to a temporary file and moved into place only on
success, leaving no partial output behind on failure.
"""

from __future__ import annotations

import csv
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import date

from .. import __version__
from ..engine import annotate
from ..model import Document
from ..ruleset import CompiledMatchers, compile_rule_package, parse_rule_package
from .config import PipelineConfig, resolve_rule_package
from .records import (
    NOTE_NLP_COLUMNS,
    NoteNlpRecord,
    NoteRecord,
    mention_to_note_nlp,
    note_nlp_to_row,
)
from .sources import RecordError, read_notes


@dataclass(frozen=True, slots=True)
class RunSummary:
    notes_in: int
    notes_failed: int
    mentions_out: int
    elapsed: float


def run_pipeline(cfg: PipelineConfig) -> RunSummary:
    started = time.monotonic()
    package_path = resolve_rule_package(cfg.rule_package, cfg.base_dir)
    matchers = compile_rule_package(parse_rule_package(package_path))
    system_tag = cfg.nlp_system or f"clinotate/{__version__}"
    run_date = cfg.run_date or date.today()

    errors: list[RecordError] = []
    notes = list(read_notes(cfg.source, on_error=errors.append))

    def annotate_note(note: NoteRecord) -> tuple[NoteRecord, list]:
        doc = Document(doc_id=str(note.note_id), text=note.note_text, doc_date=note.note_date)
        return note, annotate(doc, matchers)

    if cfg.parallelism > 1 and len(notes) > 1:
        with ThreadPoolExecutor(max_workers=cfg.parallelism) as pool:
            annotated = list(pool.map(annotate_note, notes))
    else:
        annotated = [annotate_note(note) for note in notes]

    # Deterministic output order regardless of worker scheduling.
    annotated.sort(key=lambda pair: pair[0].note_id)
    records: list[NoteNlpRecord] = []
    for note, mentions in annotated:
        for mention in mentions:
            records.append(mention_to_note_nlp(
                mention, note, seq=len(records) + 1,
                system_tag=system_tag, run_date=run_date,
            ))

    _write_sink(cfg, records)
    return RunSummary(
        notes_in=len(notes),
        notes_failed=len(errors),
        mentions_out=len(records),
        elapsed=time.monotonic() - started,
    )


def _write_sink(cfg: PipelineConfig, records: list[NoteNlpRecord]) -> None:
    location = cfg.sink.location
    if not os.path.isabs(location):
        location = str(cfg.base_dir / location)
    os.makedirs(os.path.dirname(location) or ".", exist_ok=True)
    tmp = location + ".partial"
    try:
        with open(tmp, "w", newline="", encoding="utf-8") as handle:
            if cfg.sink.kind == "delimited-file":
                writer = csv.writer(handle)
                writer.writerow(NOTE_NLP_COLUMNS)
                for record in records:
                    writer.writerow(note_nlp_to_row(record))
            elif cfg.sink.kind == "line-json":
                for record in records:
                    row = dict(zip(NOTE_NLP_COLUMNS, note_nlp_to_row(record)))
                    handle.write(json.dumps(row, sort_keys=True) + "\n")
            else:
                raise ValueError(f"unknown sink kind {cfg.sink.kind!r}")
        os.replace(tmp, location)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
