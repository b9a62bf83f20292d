"""Pipeline configuration: a single YAML document with nested sections.

Example::

    source:
      kind: delimited-file          # or line-json, text-directory
      location: notes.csv
      mapping:                      # source column/field per note field
        note_id: note_id
        person_id: person_id
        note_date: note_date
        note_title: note_title
        note_text: note_text
      defaults:                     # used when a field is unmapped
        note_title: ""
      filter:                       # optional, off by default
        min_chars: 1000
        anchor_date_column: first_positive_date
        max_days_before_anchor: 14
        title_allowlist: [Office Visit]
    sink:
      kind: delimited-file          # or line-json
      location: out/note_nlp.csv
    rule_package: ./rulepack        # dir or zip; searched under
                                    # $OHNLP_RULE_HOME when not found directly
    parallelism: 4
    nlp_system: clinotate/0.1.0     # optional
    run_date: 2021-02-18            # optional; defaults to today
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

import yaml

from ..backbone.records import NOTE_COLUMNS

RULE_HOME_ENV = "OHNLP_RULE_HOME"

SOURCE_KINDS = ("delimited-file", "line-json", "text-directory")
SINK_KINDS = ("delimited-file", "line-json")


class ConfigError(Exception):
    pass


@dataclass(frozen=True, slots=True)
class SourceFilter:
    min_chars: int = 0
    anchor_date_column: str = ""
    max_days_before_anchor: int | None = None
    title_allowlist: tuple[str, ...] = ()

    @property
    def enabled(self) -> bool:
        return bool(self.min_chars or self.anchor_date_column or self.title_allowlist)


@dataclass(frozen=True, slots=True)
class SourceConfig:
    kind: str
    location: str
    mapping: dict[str, str] = field(default_factory=dict)
    defaults: dict[str, str] = field(default_factory=dict)
    filter: SourceFilter = field(default_factory=SourceFilter)


@dataclass(frozen=True, slots=True)
class SinkConfig:
    kind: str
    location: str


@dataclass(frozen=True, slots=True)
class PipelineConfig:
    source: SourceConfig
    sink: SinkConfig
    rule_package: str
    parallelism: int = 1
    nlp_system: str = ""
    run_date: date | None = None
    base_dir: Path = Path(".")


def load_pipeline_config(path) -> PipelineConfig:
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: not valid YAML: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: config must be a mapping")
    problems = validate_raw_config(raw)
    if problems:
        raise ConfigError(f"{path}: " + "; ".join(problems))

    src = raw["source"]
    filter_raw = src.get("filter") or {}
    source = SourceConfig(
        kind=src["kind"],
        location=str(src["location"]),
        mapping={k: str(v) for k, v in (src.get("mapping") or {}).items()},
        defaults={k: str(v) for k, v in (src.get("defaults") or {}).items()},
        filter=SourceFilter(
            min_chars=int(filter_raw.get("min_chars", 0)),
            anchor_date_column=str(filter_raw.get("anchor_date_column", "")),
            max_days_before_anchor=(
                int(filter_raw["max_days_before_anchor"])
                if "max_days_before_anchor" in filter_raw else None
            ),
            title_allowlist=tuple(filter_raw.get("title_allowlist", ())),
        ),
    )
    sink = SinkConfig(kind=raw["sink"]["kind"], location=str(raw["sink"]["location"]))
    run_date = None
    if raw.get("run_date"):
        value = raw["run_date"]
        run_date = value if isinstance(value, date) else date.fromisoformat(str(value))
    return PipelineConfig(
        source=source,
        sink=sink,
        rule_package=str(raw["rule_package"]),
        parallelism=int(raw.get("parallelism", 1)),
        nlp_system=str(raw.get("nlp_system", "")),
        run_date=run_date,
        base_dir=path.parent,
    )


def validate_raw_config(raw: dict) -> list[str]:
    problems: list[str] = []
    src = raw.get("source")
    if not isinstance(src, dict):
        problems.append("missing 'source' section")
    else:
        kind = src.get("kind")
        if kind not in SOURCE_KINDS:
            problems.append(f"source.kind must be one of {SOURCE_KINDS}, got {kind!r}")
        if not src.get("location"):
            problems.append("source.location is required")
        if kind in ("delimited-file", "line-json"):
            mapping = src.get("mapping") or {}
            defaults = src.get("defaults") or {}
            for field_name in NOTE_COLUMNS:
                if field_name not in mapping and field_name not in defaults:
                    problems.append(
                        f"source.mapping must name note field {field_name!r} "
                        "or source.defaults must provide it"
                    )
    sink = raw.get("sink")
    if not isinstance(sink, dict):
        problems.append("missing 'sink' section")
    else:
        if sink.get("kind") not in SINK_KINDS:
            problems.append(f"sink.kind must be one of {SINK_KINDS}, got {sink.get('kind')!r}")
        if not sink.get("location"):
            problems.append("sink.location is required")
    if not raw.get("rule_package"):
        problems.append("rule_package is required")
    if "parallelism" in raw:
        try:
            if int(raw["parallelism"]) < 1:
                problems.append("parallelism must be >= 1")
        except (TypeError, ValueError):
            problems.append("parallelism must be an integer")
    if raw.get("run_date") and not isinstance(raw["run_date"], date):
        try:
            date.fromisoformat(str(raw["run_date"]))
        except ValueError:
            problems.append("run_date must be an ISO date")
    return problems


def resolve_rule_package(rule_package: str, base_dir: Path) -> Path:
    """Resolve a rule package path directly, relative to the config, then
    under $OHNLP_RULE_HOME."""
    candidates = [Path(rule_package), base_dir / rule_package]
    home = os.environ.get(RULE_HOME_ENV)
    if home:
        candidates.append(Path(home) / rule_package)
    for candidate in candidates:
        if candidate.exists():
            return candidate
    raise ConfigError(
        f"rule package {rule_package!r} not found (searched {[str(c) for c in candidates]})"
    )
