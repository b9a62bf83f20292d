// Wire types mirroring the service's JSON responses and the rule bundle
// file formats.

export type Certainty = "positive" | "negated" | "hypothetical" | "possible";
export type Experiencer = "patient" | "other";

export interface Mention {
  doc_id: string;
  concept: string;
  start: number;
  end: number;
  certainty: Certainty;
  experiencer: Experiencer;
  matched_text: string;
  normalized_date: string;
  rule_id: string;
}

export interface TemporalMention {
  start: number;
  end: number;
  kind: "absolute_date" | "relative_expression";
  resolved: string;
}

export interface AnnotateResponse {
  mentions: Mention[];
  temporal: TemporalMention[];
}

export interface DictEntry {
  term: string;
  concept: string;
  source_code: string;
  source_ontology: string;
}

export interface OntologyNode {
  id: string;
  label: string;
  parent: string | null;
  synonyms: string[];
  definition: string;
  xrefs: { ontology: string; code: string }[];
  has_children: boolean;
  children: OntologyNode[];
}

export interface HealthInfo {
  status: string;
  package_name: string;
  package_version: string;
  concepts_count: number;
}

export interface UploadResult {
  ok: boolean;
  warnings: string[];
}

/** Server-side 400 payload for a package that failed to parse or validate. */
export interface ServerDiagnostic {
  message: string;
  file?: string;
  line?: number | null;
  violations?: string[];
}

export interface Diagnostic {
  file: string;
  line: number | null;
  message: string;
}
