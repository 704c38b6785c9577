/**
 * In-memory stand-in implementing the session API contract: canonical state
 * strings, hash tracking, undo stack, side-effect-free previews. Used to
 * exercise the client without a network.
 */

import type { FetchLike, SessionState } from "../src/api.js";

interface StoredSession {
  states: string[]; // undo stack of serialized states; last = current
  path: number[];
}

function hash(text: string): string {
  let acc = 0;
  for (let i = 0; i < text.length; i += 1) {
    acc = (acc * 31 + text.charCodeAt(i)) >>> 0;
  }
  return acc.toString(16);
}

export class FakeServer {
  sessions = new Map<string, StoredSession>();
  previewCalls = 0;
  private nextId = 1;

  /** initial canonical payloads keyed by a fake cluster string */
  private stateOf(id: string): SessionState {
    const session = this.sessions.get(id)!;
    const current = session.states[session.states.length - 1];
    const parsed = JSON.parse(current) as { x: string[]; b: number[][] };
    return {
      id,
      kind: "seed",
      data: parsed as unknown as Record<string, unknown>,
      path: [...session.path],
      history_length: session.states.length - 1,
      view: {
        n: 2,
        d: [2, 1],
        arrows: [[2, 1, 1]],
        b: parsed.b,
        x: parsed.x,
        y: [[], []],
      },
      state_hash: hash(current),
    };
  }

  private mutate(id: string, k: number): SessionState {
    const session = this.sessions.get(id)!;
    const current = JSON.parse(
      session.states[session.states.length - 1],
    ) as { x: string[]; b: number[][] };
    const next = {
      x: current.x.map((poly, i) =>
        i === k - 1 ? `mutated(${poly})` : poly,
      ),
      b: current.b.map((row) => row.map((v) => -v)),
    };
    session.states.push(JSON.stringify(next));
    session.path.push(k);
    return this.stateOf(id);
  }

  fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    const make = (status: number, body: unknown) =>
      ({
        ok: status < 400,
        status,
        json: async () => body,
      }) as Response;
    const created = /\/session$/.exec(url);
    if (created && method === "POST") {
      const id = `s${this.nextId++}`;
      const body = JSON.parse(String(init?.body)) as { data: { x?: string[]; b?: number[][] } };
      this.sessions.set(id, {
        states: [
          JSON.stringify({
            x: body.data.x ?? ["1*x1", "1*x2"],
            b: body.data.b ?? [
              [0, 1],
              [-1, 0],
            ],
          }),
        ],
        path: [],
      });
      return make(200, { id, kind: "seed" });
    }
    const match = /\/session\/([^/]+)\/(state|mutate|undo|preview|invariants)/.exec(url);
    if (!match) return make(404, { detail: "not found" });
    const [, id, op] = match;
    if (!this.sessions.has(id)) return make(404, { detail: `no session ${id}` });
    if (op === "state") return make(200, this.stateOf(id));
    if (op === "mutate") {
      const { k } = JSON.parse(String(init?.body)) as { k: number };
      if (k < 1 || k > 2) return make(409, { detail: "vertex out of range" });
      return make(200, this.mutate(id, k));
    }
    if (op === "undo") {
      const session = this.sessions.get(id)!;
      if (session.states.length <= 1) return make(409, { detail: "nothing to undo" });
      session.states.pop();
      session.path.pop();
      return make(200, this.stateOf(id));
    }
    if (op === "preview") {
      this.previewCalls += 1;
      const k = Number(new URL(url, "http://x").searchParams.get("k"));
      const state = this.stateOf(id);
      return make(200, {
        k,
        kind: "seed",
        diff: { new_x: `mutated(${state.view.x![k - 1]})`, old_x: state.view.x![k - 1] },
        state_hash: state.state_hash,
      });
    }
    return make(404, { detail: "unknown op" });
  };
}
