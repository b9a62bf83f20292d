"""Compilation of a rule package into immutable matcher artifacts.

Compilation is pure: equal packages produce behaviorally identical matchers.
Literal dictionary terms and literal concept patterns share one normalized
multi-phrase index; regexes are compiled once; context triggers are indexed
for the certainty pass.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .textio import RulePackageError, RulePatternError
from .types import (
    ContextDirection,
    ContextModifier,
    Pattern,
    PatternKind,
    RulePackage,
    normalize_phrase,
    validate_rule_package,
)

# Scope cutters applied even when a package declares no termin rules
# (conjunctions that reliably end a trigger's reach).
BUILTIN_TERMINATORS = ("but", "however", ";")


@dataclass(frozen=True, slots=True)
class LiteralEntry:
    concept: str
    rule_id: str


@dataclass(frozen=True, slots=True)
class RegexMatcher:
    regex: re.Pattern
    concept: str
    rule_id: str


@dataclass(frozen=True, slots=True)
class CompiledTrigger:
    """A context trigger ready for matching.

    Exactly one of ``phrase`` (normalized literal) and ``regex`` is set.
    ``cuts_scope`` marks terminators; ``pseudo`` marks neutralizing triggers
    that only block literal triggers they textually contain.
    """

    rule_id: str
    direction: ContextDirection
    modifier: ContextModifier
    priority: int
    window_sentences: int
    phrase: str | None = None
    regex: re.Pattern | None = None

    @property
    def pseudo(self) -> bool:
        return self.direction is ContextDirection.PSEUDO

    @property
    def cuts_scope(self) -> bool:
        return self.modifier is ContextModifier.TERMIN


@dataclass(frozen=True)
class CompiledMatchers:
    """Immutable compiled form of a rule package; safe to share across
    concurrent annotate calls."""

    package_name: str
    package_version: str
    concepts: frozenset[str]
    literal_index: Mapping[str, tuple[LiteralEntry, ...]]
    max_literal_len: int
    regex_matchers: tuple[RegexMatcher, ...]
    triggers: tuple[CompiledTrigger, ...]


def compile_rule_package(p: RulePackage) -> CompiledMatchers:
    """Build the matcher artifact; raises on validation or regex failure."""
    report = validate_rule_package(p)
    if not report.ok:
        raise RulePackageError("package does not validate: " + "; ".join(report.violations))

    literal_index: dict[str, list[LiteralEntry]] = {}
    regex_matchers: list[RegexMatcher] = []

    def add_literal(phrase: str, concept: str, rule_id: str) -> None:
        normalized = normalize_phrase(phrase)
        bucket = literal_index.setdefault(normalized, [])
        if all(entry.concept != concept for entry in bucket):
            bucket.append(LiteralEntry(concept, rule_id))

    for i, entry in enumerate(p.dictionary, start=1):
        add_literal(entry.term, entry.concept, f"dict/{entry.concept}/{i}")
    for rule in p.concept_rules:
        for j, pattern in enumerate(rule.patterns, start=1):
            rule_id = f"{rule.concept}/{j}"
            if pattern.kind is PatternKind.LITERAL:
                add_literal(pattern.body, rule.concept, rule_id)
            else:
                regex_matchers.append(
                    RegexMatcher(_compile_regex(pattern, rule_id), rule.concept, rule_id)
                )

    triggers: list[CompiledTrigger] = []
    for i, rule in enumerate(p.context_rules, start=1):
        rule_id = f"context/{i}"
        if rule.modifier is ContextModifier.HIST:
            continue  # accepted in files, not acted on
        if rule.trigger.kind is PatternKind.LITERAL:
            triggers.append(CompiledTrigger(
                rule_id=rule_id, direction=rule.direction, modifier=rule.modifier,
                priority=rule.priority, window_sentences=rule.window_sentences,
                phrase=normalize_phrase(rule.trigger.body),
            ))
        else:
            triggers.append(CompiledTrigger(
                rule_id=rule_id, direction=rule.direction, modifier=rule.modifier,
                priority=rule.priority, window_sentences=rule.window_sentences,
                regex=_compile_regex(rule.trigger, rule_id),
            ))
    for word in BUILTIN_TERMINATORS:
        triggers.append(CompiledTrigger(
            rule_id=f"builtin-termin/{word}", direction=ContextDirection.PRE,
            modifier=ContextModifier.TERMIN, priority=1, window_sentences=1,
            phrase=word,
        ))

    frozen_index = MappingProxyType({k: tuple(v) for k, v in literal_index.items()})
    return CompiledMatchers(
        package_name=p.name,
        package_version=p.version,
        concepts=p.concepts,
        literal_index=frozen_index,
        max_literal_len=max((len(k) for k in frozen_index), default=0),
        regex_matchers=tuple(regex_matchers),
        triggers=tuple(triggers),
    )


def _compile_regex(pattern: Pattern, rule_id: str) -> re.Pattern:
    try:
        return re.compile(pattern.body, re.IGNORECASE)
    except re.error as exc:
        raise RulePatternError(f"rule {rule_id}: regex does not compile: {exc}") from exc
