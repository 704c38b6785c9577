import { describe, expect, it } from "vitest";

import { SessionClient } from "../src/api.js";
import { FakeServer } from "./fake-server.js";

function makeClient() {
  const server = new FakeServer();
  const client = new SessionClient("http://test", server.fetch);
  return { server, client };
}

describe("session client", () => {
  it("round-trips create/state", async () => {
    const { client } = makeClient();
    const created = await client.createSession({ x: ["1*x1", "1*x2"] });
    const state = await client.state(created.id);
    expect(state.view.x).toEqual(["1*x1", "1*x2"]);
    expect(state.history_length).toBe(0);
  });

  it("mutate then undo restores the exact prior state and hash", async () => {
    const { client } = makeClient();
    const { id } = await client.createSession({});
    const before = await client.state(id);
    const mutated = await client.mutate(id, 1);
    expect(mutated.state_hash).not.toBe(before.state_hash);
    const restored = await client.undo(id);
    expect(restored.state_hash).toBe(before.state_hash);
    expect(restored.data).toEqual(before.data);
  });

  it("previews are side-effect-free and repeatable", async () => {
    const { client, server } = makeClient();
    const { id } = await client.createSession({});
    const before = await client.state(id);
    const p1 = await client.preview(id, 1);
    const p2 = await client.preview(id, 1);
    expect(p1).toEqual(p2);
    const after = await client.state(id);
    expect(after.state_hash).toBe(before.state_hash);
    expect(server.previewCalls).toBe(2);
  });

  it("surfaces server precondition failures verbatim", async () => {
    const { client } = makeClient();
    const { id } = await client.createSession({});
    await expect(client.mutate(id, 9)).rejects.toThrow("vertex out of range");
  });
});
