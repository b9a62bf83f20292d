"""Bundled starter rule package: 20 respiratory-illness signs/symptoms with
dictionary terms, literal/regex patterns, and context triggers."""

from __future__ import annotations

from importlib import resources

from ..ruleset import RulePackage, parse_rule_package


def baseline_files() -> dict[str, str]:
    root = resources.files(__name__)
    files: dict[str, str] = {}
    for name in ("manifest.json", "dict.tsv", "context.tsv"):
        files[name] = (root / name).read_text(encoding="utf-8")
    for entry in (root / "rules").iterdir():
        if entry.name.endswith(".txt"):
            files[f"rules/{entry.name}"] = entry.read_text(encoding="utf-8")
    return files


def load_baseline_package() -> RulePackage:
    return parse_rule_package(baseline_files())
