// Editor state machine for the edit -> upload-and-test -> inspect loop.
// Pure of DOM concerns; the page layer subscribes to change events.

import { ApiError, ServiceClient } from "./api.js";
import type { AnnotateResponse, Diagnostic } from "./types.js";
import {
  DraftPackage,
  cloneDraft,
  draftsEqual,
  emptyDraft,
  serializeDraft,
  validateDraft,
} from "./rulepack.js";

export interface EditorState {
  draft: DraftPackage;
  lastUploaded: DraftPackage | null;
  dirty: boolean;
  sessionId: string;
  lastText: string;
  lastDocDate: string | null;
  lastResponse: AnnotateResponse | null;
  diagnostics: Diagnostic[];
  banner: string | null;
  busy: boolean;
}

type Listener = (state: EditorState) => void;

export class EditorController {
  readonly state: EditorState;
  private listeners: Listener[] = [];
  private pending: { text: string; docDate: string | null } | null = null;

  constructor(private api: ServiceClient, sessionId?: string) {
    this.state = {
      draft: emptyDraft(),
      lastUploaded: null,
      dirty: true,
      sessionId: sessionId ?? newSessionId(),
      lastText: "",
      lastDocDate: null,
      lastResponse: null,
      diagnostics: [],
      banner: null,
      busy: false,
    };
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  /** All draft edits go through here so the dirty flag stays truthful. */
  mutateDraft(mutator: (draft: DraftPackage) => void): void {
    mutator(this.state.draft);
    this.state.dirty = this.state.lastUploaded === null
      || !draftsEqual(this.state.draft, this.state.lastUploaded);
    this.emit();
  }

  loadDraft(draft: DraftPackage): void {
    this.state.draft = cloneDraft(draft);
    this.state.dirty = this.state.lastUploaded === null
      || !draftsEqual(this.state.draft, this.state.lastUploaded);
    this.emit();
  }

  addConcept(name: string): void {
    const concept = name.trim().toUpperCase().replace(/[^A-Z0-9_]+/g, "_");
    if (!concept) return;
    this.mutateDraft((draft) => {
      if (!draft.concepts.includes(concept)) {
        draft.concepts.push(concept);
        draft.concepts.sort();
        draft.patterns[concept] = draft.patterns[concept] ?? [];
      }
    });
  }

  addPattern(concept: string, line: string): void {
    if (!line.trim()) return;
    this.mutateDraft((draft) => {
      (draft.patterns[concept] ??= []).push(line.trim());
    });
  }

  /** Serialize, upload, and re-annotate.  A second call while one is in
   * flight is coalesced: the latest request runs after the current one. */
  async uploadAndTest(text: string, docDate: string | null): Promise<void> {
    if (this.state.busy) {
      this.pending = { text, docDate };
      return;
    }
    this.state.busy = true;
    this.emit();
    try {
      await this.runUploadAndTest(text, docDate);
    } finally {
      this.state.busy = false;
      this.emit();
      const queued = this.pending;
      this.pending = null;
      if (queued) {
        await this.uploadAndTest(queued.text, queued.docDate);
      }
    }
  }

  private async runUploadAndTest(text: string, docDate: string | null): Promise<void> {
    this.state.banner = null;
    const local = validateDraft(this.state.draft);
    if (local.length > 0) {
      this.state.diagnostics = local;
      this.emit();
      return;
    }
    this.state.diagnostics = [];
    let response: AnnotateResponse;
    try {
      await this.api.uploadRuleset(this.state.sessionId, serializeDraft(this.state.draft));
      response = await this.api.annotate(text, docDate, this.state.sessionId);
    } catch (error) {
      this.absorbFailure(error);
      return;
    }
    // success: highlights come from this response and from nothing else
    this.state.lastUploaded = cloneDraft(this.state.draft);
    this.state.dirty = false;
    this.state.lastText = text;
    this.state.lastDocDate = docDate;
    this.state.lastResponse = response;
    this.emit();
  }

  /** Annotate without uploading (demo tab); uses the session package when
   * one has been uploaded, the server default otherwise. */
  async annotateOnly(text: string, docDate: string | null): Promise<void> {
    this.state.banner = null;
    try {
      const session = this.state.lastUploaded !== null ? this.state.sessionId : null;
      const response = await this.api.annotate(text, docDate, session);
      this.state.lastText = text;
      this.state.lastDocDate = docDate;
      this.state.lastResponse = response;
    } catch (error) {
      this.absorbFailure(error);
      return;
    }
    this.emit();
  }

  private absorbFailure(error: unknown): void {
    if (error instanceof ApiError) {
      if (error.status === 400 && error.diagnostic) {
        this.state.diagnostics = [{
          file: error.diagnostic.file ?? "",
          line: error.diagnostic.line ?? null,
          message: error.diagnostic.message
            + (error.diagnostic.violations ? ": " + error.diagnostic.violations.join("; ") : ""),
        }];
      } else {
        this.state.banner = `${error.status}: ${error.message}`;
      }
    } else {
      this.state.banner = `network failure: ${(error as Error).message ?? error}`;
    }
    this.emit();
  }
}

function newSessionId(): string {
  const cryptoObj = (globalThis as { crypto?: Crypto }).crypto;
  if (cryptoObj?.randomUUID) {
    return cryptoObj.randomUUID();
  }
  return "s-" + Math.random().toString(36).slice(2) + Date.now().toString(36);
}
