/**
 * End-to-end against a live session service. Run with:
 *   GENCLUSTER_SERVER=http://127.0.0.1:8787 npx vitest run tests/integration.test.ts
 * Skipped when the variable is unset so the suite works offline.
 */

import { describe, expect, it } from "vitest";

import { SessionClient } from "../src/api.js";
import { renderPanel } from "../src/render.js";

const BASE = process.env.GENCLUSTER_SERVER;

const SEED_PAYLOAD = {
  n: 2,
  d: [2, 1],
  z: { "1": ["1", "z1_1", "1"], "2": ["1", "1"] },
  b: [
    [0, 1],
    [-1, 0],
  ],
  x: ["1*x1", "1*x2"],
  y: [[0], [0]],
  principal: false,
  history: [],
};

describe.skipIf(!BASE)("live server", () => {
  it("mutate/undo restores byte-identical state; previews are pure", async () => {
    const client = new SessionClient(BASE!);
    const { id } = await client.createSession(SEED_PAYLOAD);
    const before = await client.state(id);
    const preview1 = await client.preview(id, 1);
    const preview2 = await client.preview(id, 1);
    expect(preview1).toEqual(preview2);
    expect((await client.state(id)).state_hash).toBe(before.state_hash);

    const mutated = await client.mutate(id, 1);
    expect(mutated.view.x![0]).toBe(preview1.diff.new_x);
    // rendered strings are the server's canonical strings, verbatim
    const html = renderPanel("cluster", mutated);
    expect(html).toContain((mutated.view.x![0] as string).replace(/\^/g, "^"));

    const restored = await client.undo(id);
    expect(restored.state_hash).toBe(before.state_hash);
    expect(restored.data).toEqual(before.data);
  });
});

describe.skipIf(!BASE)("pentagon walk", () => {
  it("five alternating mutations return to the initial unlabeled cluster", async () => {
    const client = new SessionClient(BASE!);
    const payload = {
      n: 2,
      d: [1, 1],
      z: { "1": ["1", "1"], "2": ["1", "1"] },
      b: [
        [0, 1],
        [-1, 0],
      ],
      x: ["1*x1", "1*x2"],
      y: [[], []],
      principal: false,
      history: [],
    };
    const { id } = await client.createSession(payload);
    const initial = await client.state(id);
    let state = initial;
    for (const k of [1, 2, 1, 2, 1]) {
      state = await client.mutate(id, k);
    }
    expect(state.path).toEqual([1, 2, 1, 2, 1]);
    const sortedInitial = [...(initial.view.x ?? [])].sort();
    const sortedFinal = [...(state.view.x ?? [])].sort();
    expect(sortedFinal).toEqual(sortedInitial);
  });
});
