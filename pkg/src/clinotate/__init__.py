"""clinotate: rule-based clinical text annotation and evaluation toolkit."""

from .model import (
    Certainty,
    ConceptMention,
    Document,
    Experiencer,
    Span,
    snippet,
    span_overlaps,
    validate_mention,
)

__version__ = "0.1.0"

__all__ = [
    "Certainty",
    "ConceptMention",
    "Document",
    "Experiencer",
    "Span",
    "__version__",
    "snippet",
    "span_overlaps",
    "validate_mention",
]
