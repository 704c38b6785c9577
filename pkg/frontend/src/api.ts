/**
 * Typed client for the session service. Every number and polynomial string
 * displayed by the explorer originates verbatim from these payloads; the
 * client performs no mathematical computation of its own.
 */

export interface SessionState {
  id: string;
  kind: string;
  data: Record<string, unknown>;
  path: number[];
  history_length: number;
  view: ViewPayload;
  state_hash: string;
}

export interface ViewPayload {
  n: number;
  d: number[];
  arrows: [number, number, number][]; // tail, head, multiplicity
  b: number[][];
  x?: string[];
  y?: number[][];
  potential?: string;
  reduced?: boolean;
}

export interface PreviewPayload {
  k: number;
  kind: string;
  diff: Record<string, unknown>;
  state_hash: string;
}

export interface InvariantsPayload {
  id: string;
  checks: { name: string; passed: boolean; details: string }[];
}

export interface GraphPayload {
  id: string;
  depth: number;
  mode: string;
  graph: {
    complete: boolean;
    nodes: { id: number; b: number[][]; x: string[]; depth: number }[];
    edges: { from: number; to: number; k: number }[];
  };
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export class SessionClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const body = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, String((body as { detail?: string }).detail ?? response.status));
    }
    return body as T;
  }

  createSession(data: Record<string, unknown>): Promise<{ id: string; kind: string }> {
    return this.request("/session", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ data }),
    });
  }

  state(id: string): Promise<SessionState> {
    return this.request(`/session/${id}/state`);
  }

  mutate(id: string, k: number): Promise<SessionState> {
    return this.request(`/session/${id}/mutate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ k }),
    });
  }

  undo(id: string): Promise<SessionState> {
    return this.request(`/session/${id}/undo`, { method: "POST" });
  }

  preview(id: string, k: number): Promise<PreviewPayload> {
    return this.request(`/session/${id}/preview?k=${k}`);
  }

  invariants(id: string): Promise<InvariantsPayload> {
    return this.request(`/session/${id}/invariants`);
  }

  graph(id: string, depth: number, mode: string): Promise<GraphPayload> {
    return this.request(`/session/${id}/graph?depth=${depth}&mode=${mode}`);
  }
}
