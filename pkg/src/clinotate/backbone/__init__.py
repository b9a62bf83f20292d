"""ETL layer: configurable note sources, annotation fan-out, CDM-shaped sinks."""

from .config import (
    ConfigError,
    PipelineConfig,
    SinkConfig,
    SourceConfig,
    SourceFilter,
    load_pipeline_config,
    resolve_rule_package,
    validate_raw_config,
)
from .pipeline import RunSummary, run_pipeline
from .records import (
    NOTE_COLUMNS,
    NOTE_NLP_COLUMNS,
    NoteNlpRecord,
    NoteRecord,
    certainty_from_modifiers,
    mention_to_note_nlp,
    note_nlp_from_row,
    note_nlp_to_row,
)
from .sources import IngestionError, RecordError, read_notes, stable_note_id

__all__ = [
    "NOTE_COLUMNS",
    "NOTE_NLP_COLUMNS",
    "ConfigError",
    "IngestionError",
    "NoteNlpRecord",
    "NoteRecord",
    "PipelineConfig",
    "RecordError",
    "RunSummary",
    "SinkConfig",
    "SourceConfig",
    "SourceFilter",
    "certainty_from_modifiers",
    "load_pipeline_config",
    "mention_to_note_nlp",
    "note_nlp_from_row",
    "note_nlp_to_row",
    "read_notes",
    "resolve_rule_package",
    "run_pipeline",
    "stable_note_id",
    "validate_raw_config",
]
