// Draft rule package: the editable client-side mirror of the bundle the
// server understands, serialized to the same file map the service accepts.

import { escapeField, unescapeField } from "./escape.js";
import type { DictEntry, Diagnostic } from "./types.js";

export interface DraftPackage {
  name: string;
  version: string;
  concepts: string[];
  dictionary: DictEntry[];
  /** concept -> pattern lines; a `regex:` prefix selects regex kind */
  patterns: Record<string, string[]>;
  /** raw context.tsv lines: trigger \t direction \t modifier \t priority \t window */
  contextLines: string[];
}

export const CONCEPT_NAME = /^[A-Z][A-Z0-9_]*$/;
const DIRECTIONS = new Set(["pre", "post", "pseudo"]);
const MODIFIERS = new Set(["neg", "poss", "hypo", "exp_other", "termin", "hist"]);

export function emptyDraft(name = "my_ruleset", version = "1"): DraftPackage {
  return { name, version, concepts: [], dictionary: [], patterns: {}, contextLines: [] };
}

export function cloneDraft(draft: DraftPackage): DraftPackage {
  return {
    name: draft.name,
    version: draft.version,
    concepts: [...draft.concepts],
    dictionary: draft.dictionary.map((e) => ({ ...e })),
    patterns: Object.fromEntries(
      Object.entries(draft.patterns).map(([concept, lines]) => [concept, [...lines]]),
    ),
    contextLines: [...draft.contextLines],
  };
}

export function draftsEqual(a: DraftPackage, b: DraftPackage): boolean {
  return JSON.stringify(normalizeForCompare(a)) === JSON.stringify(normalizeForCompare(b));
}

function normalizeForCompare(draft: DraftPackage) {
  return {
    name: draft.name,
    version: draft.version,
    concepts: [...draft.concepts].sort(),
    dictionary: draft.dictionary,
    patterns: Object.fromEntries(
      Object.entries(draft.patterns).sort(([a], [b]) => a.localeCompare(b)),
    ),
    contextLines: draft.contextLines,
  };
}

export function serializeDraft(draft: DraftPackage): Record<string, string> {
  const files: Record<string, string> = {};
  files["manifest.json"] = JSON.stringify(
    { name: draft.name, version: draft.version, concepts: [...draft.concepts].sort() },
    null,
    2,
  ) + "\n";
  if (draft.dictionary.length > 0) {
    files["dict.tsv"] = draft.dictionary
      .map((e) => [
        escapeField(e.term), e.concept, escapeField(e.source_code),
        escapeField(e.source_ontology),
      ].join("\t"))
      .join("\n") + "\n";
  }
  for (const [concept, lines] of Object.entries(draft.patterns)) {
    if (lines.length > 0) {
      files[`rules/${concept}.txt`] = lines.map(escapeField).join("\n") + "\n";
    }
  }
  if (draft.contextLines.length > 0) {
    files["context.tsv"] = draft.contextLines.join("\n") + "\n";
  }
  return files;
}

export function parseDraft(files: Record<string, string>): DraftPackage {
  const draft = emptyDraft();
  const manifestText = files["manifest.json"];
  if (manifestText !== undefined) {
    const manifest = JSON.parse(manifestText) as {
      name?: string; version?: string; concepts?: string[];
    };
    draft.name = manifest.name ?? draft.name;
    draft.version = manifest.version ?? draft.version;
    draft.concepts = [...(manifest.concepts ?? [])].sort();
  }
  const dictText = files["dict.tsv"];
  if (dictText !== undefined) {
    for (const line of contentLines(dictText)) {
      const parts = line.split("\t");
      draft.dictionary.push({
        term: unescapeField(parts[0] ?? ""),
        concept: parts[1] ?? "",
        source_code: unescapeField(parts[2] ?? ""),
        source_ontology: unescapeField(parts[3] ?? ""),
      });
    }
  }
  for (const [path, content] of Object.entries(files)) {
    const match = /^rules\/(.+)\.txt$/.exec(path);
    if (match) {
      draft.patterns[match[1]!] = contentLines(content).map(unescapeField);
    }
  }
  const contextText = files["context.tsv"];
  if (contextText !== undefined) {
    draft.contextLines = contentLines(contextText);
  }
  return draft;
}

function contentLines(content: string): string[] {
  return content
    .split("\n")
    .map((line) => line.replace(/\r$/, ""))
    .filter((line) => line.trim() !== "" && !line.trimStart().startsWith("#"));
}

/** Client-side precheck run before any upload; mirrors the server's file and
 * line conventions so failures land inline at the same place. */
export function validateDraft(draft: DraftPackage): Diagnostic[] {
  const diagnostics: Diagnostic[] = [];
  if (!draft.name.trim()) {
    diagnostics.push({ file: "manifest.json", line: 1, message: "ruleset name is required" });
  }
  for (const concept of draft.concepts) {
    if (!CONCEPT_NAME.test(concept)) {
      diagnostics.push({
        file: "manifest.json", line: 1,
        message: `concept name ${concept} must be UPPER_SNAKE_CASE`,
      });
    }
  }
  const declared = new Set(draft.concepts);
  draft.dictionary.forEach((entry, index) => {
    if (!entry.term.trim()) {
      diagnostics.push({ file: "dict.tsv", line: index + 1, message: "empty dictionary term" });
    }
    if (!declared.has(entry.concept)) {
      diagnostics.push({
        file: "dict.tsv", line: index + 1,
        message: `concept ${entry.concept} is not declared in the ruleset`,
      });
    }
  });
  for (const [concept, lines] of Object.entries(draft.patterns)) {
    const file = `rules/${concept}.txt`;
    if (!declared.has(concept)) {
      diagnostics.push({ file, line: 1, message: `concept ${concept} is not declared` });
    }
    lines.forEach((line, index) => {
      if (!line.trim()) {
        diagnostics.push({ file, line: index + 1, message: "empty pattern line" });
        return;
      }
      if (line.startsWith("regex:")) {
        const problem = regexProblem(line.slice("regex:".length));
        if (problem) {
          diagnostics.push({ file, line: index + 1, message: problem });
        }
      }
    });
  }
  draft.contextLines.forEach((line, index) => {
    const parts = line.split("\t");
    if (parts.length !== 5) {
      diagnostics.push({
        file: "context.tsv", line: index + 1,
        message: "expected trigger, direction, modifier, priority, window (tab-separated)",
      });
      return;
    }
    const [trigger, direction, modifier, priority, window] = parts;
    if (!trigger!.trim()) {
      diagnostics.push({ file: "context.tsv", line: index + 1, message: "empty trigger" });
    } else if (trigger!.startsWith("regex:")) {
      const problem = regexProblem(unescapeField(trigger!).slice("regex:".length));
      if (problem) {
        diagnostics.push({ file: "context.tsv", line: index + 1, message: problem });
      }
    }
    if (!DIRECTIONS.has(direction!.trim().toLowerCase())) {
      diagnostics.push({
        file: "context.tsv", line: index + 1,
        message: `unknown direction ${direction}; use pre, post, or pseudo`,
      });
    }
    if (!MODIFIERS.has(modifier!.trim().toLowerCase())) {
      diagnostics.push({
        file: "context.tsv", line: index + 1,
        message: `unknown modifier ${modifier}`,
      });
    }
    for (const field of [priority, window]) {
      if (!/^[1-9][0-9]*$/.test(field!.trim())) {
        diagnostics.push({
          file: "context.tsv", line: index + 1,
          message: `priority and window must be integers >= 1, got ${field}`,
        });
      }
    }
  });
  return diagnostics;
}

function regexProblem(body: string): string | null {
  // Best-effort precheck: translate the named-group spelling difference,
  // the server remains the authority on anything JS cannot judge.
  const translated = body.replace(/\(\?P</g, "(?<");
  try {
    new RegExp(translated);
    return null;
  } catch (error) {
    return `regex does not compile: ${(error as Error).message}`;
  }
}
