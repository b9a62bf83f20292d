// Typed client for the annotation service.  The fetch function is
// injectable so controllers can be exercised against fakes.

import type {
  AnnotateResponse,
  DictEntry,
  HealthInfo,
  OntologyNode,
  ServerDiagnostic,
  UploadResult,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
    public diagnostic: ServerDiagnostic | null = null,
  ) {
    super(message);
  }
}

export class ServiceClient {
  constructor(
    private baseUrl: string = "",
    private fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  async annotate(
    text: string,
    docDate: string | null,
    sessionId: string | null,
  ): Promise<AnnotateResponse> {
    const body: Record<string, unknown> = { text };
    if (docDate) body["doc_date"] = docDate;
    if (sessionId) body["session_id"] = sessionId;
    return await this.postJson<AnnotateResponse>("/annotate", body);
  }

  async uploadRuleset(sessionId: string, files: Record<string, string>): Promise<UploadResult> {
    return await this.postJson<UploadResult>("/ruleset", { session_id: sessionId, files });
  }

  async ontologyTree(root: string | null, depth: number | null): Promise<OntologyNode[]> {
    const params = new URLSearchParams();
    if (root !== null) params.set("root", root);
    if (depth !== null) params.set("depth", String(depth));
    const response = await this.fetchFn(`${this.baseUrl}/ontology/tree?${params}`);
    await this.raiseForStatus(response);
    const payload = await response.json();
    return root === null ? (payload.roots as OntologyNode[]) : [payload as OntologyNode];
  }

  async dictionaryExtract(
    nodeIds: string[],
    concept: string,
    descendants: boolean,
  ): Promise<DictEntry[]> {
    const payload = await this.postJson<{ entries: DictEntry[] }>("/dictionary/extract", {
      node_ids: nodeIds, concept, descendants,
    });
    return payload.entries;
  }

  async health(): Promise<HealthInfo> {
    const response = await this.fetchFn(`${this.baseUrl}/health`);
    await this.raiseForStatus(response);
    return await response.json() as HealthInfo;
  }

  private async postJson<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchFn(`${this.baseUrl}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    await this.raiseForStatus(response);
    return await response.json() as T;
  }

  private async raiseForStatus(response: Response): Promise<void> {
    if (response.ok) return;
    let diagnostic: ServerDiagnostic | null = null;
    let message = `HTTP ${response.status}`;
    try {
      const payload = await response.json();
      const detail = payload?.detail;
      if (typeof detail === "string") {
        message = detail;
      } else if (detail && typeof detail === "object") {
        diagnostic = detail as ServerDiagnostic;
        message = diagnostic.message ?? message;
      }
    } catch {
      // non-JSON error body: keep the status message
    }
    throw new ApiError(response.status, message, diagnostic);
  }
}
