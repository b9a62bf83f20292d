"""HTTP facade and session machinery for interactive rule authoring."""

from .app import MAX_TEXT_CHARS, create_app
from .ontology import OntologyError, OntologyNode, OntologyStore, load_ontology
from .sessions import SessionRuleset, SessionStore, build_bundle

__all__ = [
    "MAX_TEXT_CHARS",
    "OntologyError",
    "OntologyNode",
    "OntologyStore",
    "SessionRuleset",
    "SessionStore",
    "build_bundle",
    "create_app",
    "load_ontology",
]
