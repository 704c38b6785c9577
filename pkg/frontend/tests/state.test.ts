import { describe, expect, it } from "vitest";

import type { PreviewPayload, SessionState } from "../src/api.js";
import {
  initialViewState,
  loadPins,
  reduce,
  savePins,
} from "../src/state.js";

const SERVER_STATE = {
  id: "s1",
  kind: "seed",
  data: {},
  path: [1],
  history_length: 1,
  view: { n: 2, d: [1, 1], arrows: [], b: [[0, 0], [0, 0]] },
  state_hash: "aa",
} as SessionState;

describe("view state reducer", () => {
  it("tracks the history cursor from the server", () => {
    let state = initialViewState();
    state = reduce(state, { type: "session-opened", id: "s1", state: SERVER_STATE });
    expect(state.historyCursor).toBe(1);
    const undone = { ...SERVER_STATE, history_length: 0, path: [] };
    state = reduce(state, { type: "state-fetched", state: undone });
    expect(state.historyCursor).toBe(0);
  });

  it("clears previews when fresh state arrives", () => {
    let state = initialViewState();
    state = reduce(state, { type: "session-opened", id: "s1", state: SERVER_STATE });
    const preview: PreviewPayload = { k: 1, kind: "seed", diff: {}, state_hash: "aa" };
    state = reduce(state, { type: "preview-fetched", preview });
    expect(state.preview).not.toBeNull();
    state = reduce(state, { type: "state-fetched", state: SERVER_STATE });
    expect(state.preview).toBeNull();
  });

  it("records errors without losing the server state", () => {
    let state = initialViewState();
    state = reduce(state, { type: "session-opened", id: "s1", state: SERVER_STATE });
    state = reduce(state, { type: "failed", message: "server: 2-cycle" });
    expect(state.error).toContain("2-cycle");
    expect(state.server).not.toBeNull();
  });
});

describe("pin persistence", () => {
  it("stores and restores pinned positions per session", () => {
    const fake = new Map<string, string>();
    const storage = {
      getItem: (k: string) => fake.get(k) ?? null,
      setItem: (k: string, v: string) => void fake.set(k, v),
    };
    savePins("s1", { 2: { x: 10, y: 20 } }, storage);
    expect(loadPins("s1", storage)).toEqual({ 2: { x: 10, y: 20 } });
    expect(loadPins("other", storage)).toEqual({});
  });
});
