"""Note ingestion from configurable sources.

Each source yields one NoteRecord per input unit.  Structural problems
(missing mapped columns, unreadable files) abort ingestion; malformed
records (bad dates, duplicate ids) are skipped, counted, and reported
through the error callback.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass
from datetime import date, timedelta
from pathlib import Path
from typing import Callable, Iterator

from .config import ConfigError, SourceConfig, SourceFilter
from .records import NoteRecord


class IngestionError(Exception):
    """Structural ingestion failure (bad source shape, not a bad record)."""


@dataclass(frozen=True, slots=True)
class RecordError:
    unit: str
    reason: str


ErrorCallback = Callable[[RecordError], None]


def read_notes(cfg: SourceConfig, on_error: ErrorCallback | None = None) -> Iterator[NoteRecord]:
    """Stream notes from the configured source."""
    report = on_error or (lambda _err: None)
    if cfg.kind == "delimited-file":
        yield from _read_delimited(cfg, report)
    elif cfg.kind == "line-json":
        yield from _read_line_json(cfg, report)
    elif cfg.kind == "text-directory":
        yield from _read_text_directory(cfg, report)
    else:
        raise IngestionError(f"unknown source kind {cfg.kind!r}")


def _read_delimited(cfg: SourceConfig, report: ErrorCallback) -> Iterator[NoteRecord]:
    path = Path(cfg.location)
    if not path.is_file():
        raise IngestionError(f"source file not found: {path}")
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        _check_mapping_columns(cfg, header)
        seen: set[int] = set()
        for row_no, row in enumerate(reader, start=2):
            note = _build_note(cfg, row, unit=f"{path.name}:{row_no}", report=report, seen=seen)
            if note is not None and _passes_filter(cfg.filter, note, row, report,
                                                   unit=f"{path.name}:{row_no}"):
                yield note


def _read_line_json(cfg: SourceConfig, report: ErrorCallback) -> Iterator[NoteRecord]:
    path = Path(cfg.location)
    if not path.is_file():
        raise IngestionError(f"source file not found: {path}")
    seen: set[int] = set()
    checked = False
    with path.open(encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            unit = f"{path.name}:{line_no}"
            try:
                row = json.loads(line)
            except json.JSONDecodeError as exc:
                report(RecordError(unit, f"invalid JSON: {exc}"))
                continue
            if not isinstance(row, dict):
                report(RecordError(unit, "line is not a JSON object"))
                continue
            if not checked:
                _check_mapping_columns(cfg, list(row))
                checked = True
            row = {k: "" if v is None else str(v) for k, v in row.items()}
            note = _build_note(cfg, row, unit=unit, report=report, seen=seen)
            if note is not None and _passes_filter(cfg.filter, note, row, report, unit=unit):
                yield note


def _read_text_directory(cfg: SourceConfig, report: ErrorCallback) -> Iterator[NoteRecord]:
    root = Path(cfg.location)
    if not root.is_dir():
        raise IngestionError(f"source directory not found: {root}")
    seen: set[int] = set()
    for txt_path in sorted(root.glob("*.txt")):
        unit = txt_path.name
        sidecar = txt_path.with_suffix(".meta.json")
        meta: dict = {}
        if sidecar.exists():
            try:
                meta = json.loads(sidecar.read_text(encoding="utf-8"))
            except json.JSONDecodeError as exc:
                report(RecordError(unit, f"invalid sidecar JSON: {exc}"))
                continue
        raw_date = str(meta.get("note_date") or cfg.defaults.get("note_date", ""))
        if not raw_date:
            report(RecordError(unit, "no note_date in sidecar and no default configured"))
            continue
        try:
            note_date = date.fromisoformat(raw_date)
        except ValueError:
            report(RecordError(unit, f"malformed date {raw_date!r}"))
            continue
        note_id = stable_note_id(txt_path.name)
        if note_id in seen:
            report(RecordError(unit, f"duplicate note_id {note_id}"))
            continue
        seen.add(note_id)
        note = NoteRecord(
            note_id=note_id,
            person_id=int(meta.get("person_id", cfg.defaults.get("person_id", 0)) or 0),
            note_date=note_date,
            note_title=str(meta.get("note_title", cfg.defaults.get("note_title", ""))),
            note_text=txt_path.read_text(encoding="utf-8"),
        )
        if _passes_filter(cfg.filter, note, dict(meta), report, unit=unit):
            yield note


def stable_note_id(filename: str) -> int:
    digest = hashlib.sha256(filename.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1  # keep it positive


def _check_mapping_columns(cfg: SourceConfig, available: list[str]) -> None:
    for field_name, column in cfg.mapping.items():
        if column not in available:
            raise IngestionError(
                f"mapped column {column!r} (for note field {field_name!r}) "
                f"not present in source; available: {sorted(available)}"
            )


def _build_note(
    cfg: SourceConfig,
    row: dict[str, str],
    unit: str,
    report: ErrorCallback,
    seen: set[int],
) -> NoteRecord | None:
    def value_of(field_name: str) -> str:
        column = cfg.mapping.get(field_name)
        if column is not None:
            return row.get(column, "")
        return cfg.defaults.get(field_name, "")

    try:
        note_id = int(value_of("note_id"))
        person_id = int(value_of("person_id") or 0)
    except ValueError as exc:
        report(RecordError(unit, f"malformed id: {exc}"))
        return None
    raw_date = value_of("note_date")
    try:
        note_date = date.fromisoformat(raw_date)
    except ValueError:
        report(RecordError(unit, f"malformed date {raw_date!r}"))
        return None
    if note_id in seen:
        report(RecordError(unit, f"duplicate note_id {note_id}"))
        return None
    seen.add(note_id)
    return NoteRecord(
        note_id=note_id,
        person_id=person_id,
        note_date=note_date,
        note_title=value_of("note_title"),
        note_text=value_of("note_text"),
    )


def _passes_filter(
    flt: SourceFilter,
    note: NoteRecord,
    row: dict,
    report: ErrorCallback,
    unit: str,
) -> bool:
    """Filtered-out notes are silently excluded (they are not errors); a
    missing or malformed anchor date is an error because the window test
    cannot run."""
    if not flt.enabled:
        return True
    if flt.min_chars and len(note.note_text) < flt.min_chars:
        return False
    if flt.title_allowlist and note.note_title not in flt.title_allowlist:
        return False
    if flt.anchor_date_column:
        raw = str(row.get(flt.anchor_date_column, "") or "")
        if not raw:
            report(RecordError(unit, f"missing anchor date column {flt.anchor_date_column!r}"))
            return False
        try:
            anchor = date.fromisoformat(raw)
        except ValueError:
            report(RecordError(unit, f"malformed anchor date {raw!r}"))
            return False
        if flt.max_days_before_anchor is not None:
            earliest = anchor - timedelta(days=flt.max_days_before_anchor)
            if not (earliest <= note.note_date <= anchor):
                return False
    return True
