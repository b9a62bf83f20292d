"""Rule package persistence.

On-disk layout (also accepted zipped, or as an in-memory file map):

    manifest.json   {"name": ..., "version": ..., "concepts": [...]}
    dict.tsv        term <TAB> concept [<TAB> source_code [<TAB> source_ontology]]
    rules/<CONCEPT>.txt   one pattern per line, '#' starts a comment
    context.tsv     trigger <TAB> direction <TAB> modifier <TAB> priority <TAB> window_sentences

Tab, newline, and backslash characters inside field values are persisted
backslash-escaped so arbitrary pattern bodies survive a round trip.
"""

from __future__ import annotations

import io
import json
import zipfile
from pathlib import Path
from typing import Mapping

from ..model import escape_field, unescape_field
from .types import (
    ConceptRule,
    ContextDirection,
    ContextModifier,
    ContextRule,
    DictionaryEntry,
    Pattern,
    RulePackage,
    validate_rule_package,
)

MANIFEST_NAME = "manifest.json"
DICT_NAME = "dict.tsv"
CONTEXT_NAME = "context.tsv"
RULES_DIR = "rules"


class RulePackageError(Exception):
    """Problem in a rule package bundle, located by file and line."""

    def __init__(self, message: str, file: str = "", line: int | None = None):
        self.file = file
        self.line = line
        where = f"{file}:{line}: " if file and line is not None else (f"{file}: " if file else "")
        super().__init__(where + message)
        self.message = message


class RuleParseError(RulePackageError):
    pass


class RulePatternError(RulePackageError):
    pass


class RuleVocabularyError(RulePackageError):
    pass


def parse_rule_package(bundle) -> RulePackage:
    """Parse a bundle given as a directory path, a ``.zip`` path, raw zip
    bytes, or a mapping of relative file name to text content."""
    files = _bundle_files(bundle)
    manifest = _parse_manifest(files.get(MANIFEST_NAME))
    dictionary = _parse_dict(files.get(DICT_NAME, ""))
    context_rules = _parse_context(files.get(CONTEXT_NAME, ""))
    concept_rules = []
    prefix = RULES_DIR + "/"
    for name in sorted(files):
        if not name.startswith(prefix) or not name.endswith(".txt"):
            continue
        concept = name[len(prefix):-len(".txt")]
        patterns = _parse_patterns(files[name], file=name)
        if patterns:
            concept_rules.append(ConceptRule(concept=concept, patterns=tuple(patterns)))
    return RulePackage(
        name=manifest["name"],
        version=manifest["version"],
        concepts=frozenset(manifest["concepts"]),
        dictionary=tuple(dictionary),
        concept_rules=tuple(concept_rules),
        context_rules=tuple(context_rules),
    )


def package_to_files(p: RulePackage) -> dict[str, str]:
    """Serialize to the on-disk file map; deterministic for equal packages."""
    report = validate_rule_package(p)
    if not report.ok:
        raise RulePackageError("cannot serialize invalid package: " + "; ".join(report.violations))
    files: dict[str, str] = {}
    files[MANIFEST_NAME] = json.dumps(
        {"name": p.name, "version": p.version, "concepts": sorted(p.concepts)},
        indent=2,
        sort_keys=True,
    ) + "\n"
    if p.dictionary:
        lines = []
        for e in p.dictionary:
            fields = [escape_field(e.term), e.concept, escape_field(e.source_code),
                      escape_field(e.source_ontology)]
            lines.append("\t".join(fields))
        files[DICT_NAME] = "\n".join(lines) + "\n"
    for rule in p.concept_rules:
        body = "\n".join(escape_field(pat.to_text()) for pat in rule.patterns) + "\n"
        files[f"{RULES_DIR}/{rule.concept}.txt"] = body
    if p.context_rules:
        lines = []
        for r in p.context_rules:
            lines.append("\t".join([
                escape_field(r.trigger.to_text()),
                r.direction.value,
                r.modifier.value,
                str(r.priority),
                str(r.window_sentences),
            ]))
        files[CONTEXT_NAME] = "\n".join(lines) + "\n"
    return files


def serialize_rule_package(p: RulePackage) -> bytes:
    """Serialize to byte-stable zip archive bytes (fixed entry metadata,
    sorted names, stored uncompressed)."""
    files = package_to_files(p)
    buf = io.BytesIO()
    with zipfile.ZipFile(buf, "w", compression=zipfile.ZIP_STORED) as zf:
        for name in sorted(files):
            info = zipfile.ZipInfo(name, date_time=(1980, 1, 1, 0, 0, 0))
            info.external_attr = 0o644 << 16
            zf.writestr(info, files[name].encode("utf-8"))
    return buf.getvalue()


def write_package_tree(p: RulePackage, dest: Path) -> None:
    dest = Path(dest)
    for name, content in package_to_files(p).items():
        target = dest / name
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(content, encoding="utf-8")


# -- bundle loading -----------------------------------------------------------

def _is_bundle_member(name: str) -> bool:
    if name in (MANIFEST_NAME, DICT_NAME, CONTEXT_NAME):
        return True
    return name.startswith(RULES_DIR + "/") and name.endswith(".txt")


def _bundle_files(bundle) -> dict[str, str]:
    if isinstance(bundle, Mapping):
        return {str(k).replace("\\", "/"): str(v) for k, v in bundle.items()}
    if isinstance(bundle, (bytes, bytearray)):
        return _files_from_zip_bytes(bytes(bundle))
    path = Path(bundle)
    if path.is_dir():
        # Only the layout's own files are read; anything else colocated in
        # the directory is ignored.
        files = {}
        for sub in path.rglob("*"):
            if not sub.is_file():
                continue
            rel = sub.relative_to(path).as_posix()
            if _is_bundle_member(rel):
                files[rel] = sub.read_text(encoding="utf-8")
        return files
    if path.is_file():
        return _files_from_zip_bytes(path.read_bytes())
    raise RulePackageError(f"bundle not found: {path}")


def _files_from_zip_bytes(data: bytes) -> dict[str, str]:
    try:
        zf = zipfile.ZipFile(io.BytesIO(data))
    except zipfile.BadZipFile as exc:
        raise RuleParseError(f"not a zip archive: {exc}") from exc
    files = {}
    for info in zf.infolist():
        if info.is_dir():
            continue
        name = info.filename.replace("\\", "/").lstrip("/")
        if _is_bundle_member(name):
            files[name] = zf.read(info).decode("utf-8")
    return files


# -- section parsers ----------------------------------------------------------

def _parse_manifest(content: str | None) -> dict:
    if content is None:
        # An empty bundle (no files at all) is a valid, empty package.
        return {"name": "unnamed", "version": "0", "concepts": []}
    try:
        raw = json.loads(content)
    except json.JSONDecodeError as exc:
        raise RuleParseError(f"invalid JSON: {exc}", file=MANIFEST_NAME, line=exc.lineno)
    for key in ("name", "version"):
        if key not in raw or not isinstance(raw[key], str) or not raw[key]:
            raise RuleParseError(f"manifest missing non-empty string field {key!r}",
                                 file=MANIFEST_NAME, line=1)
    concepts = raw.get("concepts", [])
    if not isinstance(concepts, list) or not all(isinstance(c, str) for c in concepts):
        raise RuleParseError("manifest field 'concepts' must be a list of strings",
                             file=MANIFEST_NAME, line=1)
    return {"name": raw["name"], "version": raw["version"], "concepts": concepts}


def _lines(content: str):
    for lineno, line in enumerate(content.split("\n"), start=1):
        stripped = line.rstrip("\r")
        if not stripped.strip() or stripped.lstrip().startswith("#"):
            continue
        yield lineno, stripped


def _parse_dict(content: str) -> list[DictionaryEntry]:
    entries = []
    for lineno, line in _lines(content):
        parts = line.split("\t")
        if len(parts) < 2:
            raise RuleParseError("expected at least term<TAB>concept", file=DICT_NAME, line=lineno)
        if len(parts) > 4:
            raise RuleParseError(f"too many fields ({len(parts)})", file=DICT_NAME, line=lineno)
        term = unescape_field(parts[0])
        concept = parts[1].strip()
        source_code = unescape_field(parts[2]) if len(parts) > 2 else ""
        source_ontology = unescape_field(parts[3]) if len(parts) > 3 else ""
        try:
            entries.append(DictionaryEntry(term, concept, source_code, source_ontology))
        except ValueError as exc:
            raise RuleParseError(str(exc), file=DICT_NAME, line=lineno) from exc
    return entries


def _parse_patterns(content: str, file: str) -> list[Pattern]:
    patterns = []
    for lineno, line in _lines(content):
        try:
            pattern = Pattern.from_text(unescape_field(line))
        except ValueError as exc:
            raise RuleParseError(str(exc), file=file, line=lineno) from exc
        problem = _compile_problem(pattern)
        if problem:
            raise RulePatternError(problem, file=file, line=lineno)
        patterns.append(pattern)
    return patterns


def _parse_context(content: str) -> list[ContextRule]:
    rules = []
    for lineno, line in _lines(content):
        parts = line.split("\t")
        if len(parts) != 5:
            raise RuleParseError(
                "expected trigger<TAB>direction<TAB>modifier<TAB>priority<TAB>window_sentences",
                file=CONTEXT_NAME, line=lineno,
            )
        try:
            trigger = Pattern.from_text(unescape_field(parts[0]))
        except ValueError as exc:
            raise RuleParseError(str(exc), file=CONTEXT_NAME, line=lineno) from exc
        problem = _compile_problem(trigger)
        if problem:
            raise RulePatternError(problem, file=CONTEXT_NAME, line=lineno)
        try:
            direction = ContextDirection(parts[1].strip().lower())
        except ValueError:
            raise RuleVocabularyError(f"unknown direction token {parts[1]!r}",
                                      file=CONTEXT_NAME, line=lineno) from None
        try:
            modifier = ContextModifier(parts[2].strip().lower())
        except ValueError:
            raise RuleVocabularyError(f"unknown modifier token {parts[2]!r}",
                                      file=CONTEXT_NAME, line=lineno) from None
        try:
            priority = int(parts[3])
            window = int(parts[4])
            rules.append(ContextRule(trigger, direction, modifier, priority, window))
        except ValueError as exc:
            raise RuleParseError(str(exc), file=CONTEXT_NAME, line=lineno) from exc
    return rules


def _compile_problem(pattern: Pattern) -> str | None:
    import re

    from .types import PatternKind

    if pattern.kind is not PatternKind.REGEX:
        return None
    try:
        re.compile(pattern.body)
    except re.error as exc:
        return f"regex does not compile: {exc}"
    return None
