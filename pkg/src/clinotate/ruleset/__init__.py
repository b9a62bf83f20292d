"""Rule packages: parse, validate, serialize, and compile to matchers."""

from .compiled import (
    BUILTIN_TERMINATORS,
    CompiledMatchers,
    CompiledTrigger,
    LiteralEntry,
    RegexMatcher,
    compile_rule_package,
)
from .textio import (
    RulePackageError,
    RuleParseError,
    RulePatternError,
    RuleVocabularyError,
    package_to_files,
    parse_rule_package,
    serialize_rule_package,
    write_package_tree,
)
from .types import (
    ConceptRule,
    ContextDirection,
    ContextModifier,
    ContextRule,
    DictionaryEntry,
    Pattern,
    PatternKind,
    RulePackage,
    ValidationReport,
    normalize_phrase,
    validate_rule_package,
)

__all__ = [
    "BUILTIN_TERMINATORS",
    "CompiledMatchers",
    "CompiledTrigger",
    "ConceptRule",
    "ContextDirection",
    "ContextModifier",
    "ContextRule",
    "DictionaryEntry",
    "LiteralEntry",
    "Pattern",
    "PatternKind",
    "RegexMatcher",
    "RulePackage",
    "RulePackageError",
    "RuleParseError",
    "RulePatternError",
    "RuleVocabularyError",
    "ValidationReport",
    "compile_rule_package",
    "normalize_phrase",
    "package_to_files",
    "parse_rule_package",
    "serialize_rule_package",
    "validate_rule_package",
    "write_package_tree",
]
