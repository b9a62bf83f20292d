"""Rule package value types: dictionary entries, concept rules, context rules."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

CONCEPT_NAME_RE = re.compile(r"^[A-Z][A-Z0-9_]*$")

REGEX_PREFIX = "regex:"


def normalize_phrase(s: str) -> str:
    """Casefold and collapse every whitespace run to a single space."""
    return " ".join(s.split()).casefold()


class PatternKind(Enum):
    LITERAL = "literal"
    REGEX = "regex"


@dataclass(frozen=True, slots=True)
class Pattern:
    """One matchable unit of a concept or context rule.

    Literal bodies match case-insensitively with whitespace runs treated as a
    single separator; regex bodies are matched as written (case-insensitive).
    A literal body may not start with the ``regex:`` selector prefix, which
    is reserved by the file format.
    """

    kind: PatternKind
    body: str

    def __post_init__(self) -> None:
        if self.kind is PatternKind.LITERAL:
            if not normalize_phrase(self.body):
                raise ValueError("literal pattern body is empty after normalization")
            if self.body.startswith(REGEX_PREFIX):
                raise ValueError(f"literal pattern body may not start with {REGEX_PREFIX!r}")
        elif not self.body:
            raise ValueError("regex pattern body is empty")

    def to_text(self) -> str:
        return REGEX_PREFIX + self.body if self.kind is PatternKind.REGEX else self.body

    @classmethod
    def from_text(cls, text: str) -> "Pattern":
        if text.startswith(REGEX_PREFIX):
            return cls(PatternKind.REGEX, text[len(REGEX_PREFIX):])
        return cls(PatternKind.LITERAL, text)


class ContextDirection(Enum):
    PRE = "pre"
    POST = "post"
    PSEUDO = "pseudo"


class ContextModifier(Enum):
    NEG = "neg"
    POSS = "poss"
    HYPO = "hypo"
    EXP_OTHER = "exp_other"
    TERMIN = "termin"
    # Accepted in files for forward compatibility; the engine ignores it
    # (temporality beyond certainty is not modeled).
    HIST = "hist"


@dataclass(frozen=True, slots=True)
class DictionaryEntry:
    term: str
    concept: str
    source_code: str = ""
    source_ontology: str = ""

    def __post_init__(self) -> None:
        if not normalize_phrase(self.term):
            raise ValueError("dictionary term is empty after normalization")
        if not self.concept:
            raise ValueError("dictionary entry concept must be non-empty")


@dataclass(frozen=True, slots=True)
class ConceptRule:
    concept: str
    patterns: tuple[Pattern, ...]

    def __post_init__(self) -> None:
        if not self.patterns:
            raise ValueError(f"concept rule {self.concept} has no patterns")


@dataclass(frozen=True, slots=True)
class ContextRule:
    trigger: Pattern
    direction: ContextDirection
    modifier: ContextModifier
    priority: int = 1
    window_sentences: int = 1

    def __post_init__(self) -> None:
        if self.priority < 1:
            raise ValueError("context rule priority must be >= 1")
        if self.window_sentences < 1:
            raise ValueError("context rule window_sentences must be >= 1")


@dataclass(frozen=True, slots=True)
class RulePackage:
    """A versioned bundle of dictionary entries, concept rules, and context
    rules; the unit of upload, download, and compilation."""

    name: str
    version: str
    concepts: frozenset[str] = field(default_factory=frozenset)
    dictionary: tuple[DictionaryEntry, ...] = ()
    concept_rules: tuple[ConceptRule, ...] = ()
    context_rules: tuple[ContextRule, ...] = ()


@dataclass(frozen=True, slots=True)
class ValidationReport:
    violations: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_rule_package(p: RulePackage) -> ValidationReport:
    """Check package-level invariants.

    Violations block compilation; duplicate (term, concept) dictionary pairs
    are reported as warnings only.
    """
    violations: list[str] = []
    warnings: list[str] = []
    if not p.name:
        violations.append("package name must be non-empty")
    for concept in sorted(p.concepts):
        if not CONCEPT_NAME_RE.match(concept):
            violations.append(f"concept name {concept!r} is not UPPER_SNAKE_CASE")
    for rule in p.concept_rules:
        if rule.concept not in p.concepts:
            violations.append(
                f"concept rule {rule.concept} references a concept outside the declared set"
            )
        for pat in rule.patterns:
            if pat.kind is PatternKind.REGEX:
                problem = _regex_problem(pat.body)
                if problem:
                    violations.append(f"rule {rule.concept}: bad regex {pat.body!r}: {problem}")
    for entry in p.dictionary:
        if entry.concept not in p.concepts:
            violations.append(
                f"dictionary term {entry.term!r} references concept {entry.concept} "
                "outside the declared set"
            )
    seen: set[tuple[str, str]] = set()
    for entry in p.dictionary:
        key = (normalize_phrase(entry.term), entry.concept)
        if key in seen:
            warnings.append(f"duplicate dictionary term {entry.term!r} for {entry.concept}")
        seen.add(key)
    for i, rule in enumerate(p.context_rules, start=1):
        if rule.trigger.kind is PatternKind.REGEX:
            problem = _regex_problem(rule.trigger.body)
            if problem:
                violations.append(f"context rule {i}: bad regex {rule.trigger.body!r}: {problem}")
    return ValidationReport(tuple(violations), tuple(warnings))


def _regex_problem(body: str) -> str | None:
    try:
        re.compile(body)
    except re.error as exc:
        return str(exc)
    return None
