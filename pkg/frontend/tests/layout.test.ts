import { describe, expect, it } from "vitest";

import { layoutQuiver } from "../src/layout.js";

describe("layout", () => {
  const arrows: [number, number, number][] = [
    [2, 1, 1],
    [3, 2, 2],
  ];

  it("is deterministic for the same input", () => {
    const a = layoutQuiver(3, arrows, { width: 400, height: 300 });
    const b = layoutQuiver(3, arrows, { width: 400, height: 300 });
    expect(a).toEqual(b);
  });

  it("keeps every vertex inside the frame", () => {
    const pos = layoutQuiver(4, arrows, { width: 400, height: 300 });
    for (let v = 1; v <= 4; v += 1) {
      expect(pos[v].x).toBeGreaterThanOrEqual(40);
      expect(pos[v].x).toBeLessThanOrEqual(360);
      expect(pos[v].y).toBeGreaterThanOrEqual(40);
      expect(pos[v].y).toBeLessThanOrEqual(260);
    }
  });

  it("respects pinned positions exactly", () => {
    const pinned = { 1: { x: 77, y: 88 } };
    const pos = layoutQuiver(3, arrows, { width: 400, height: 300, pinned });
    expect(pos[1]).toEqual({ x: 77, y: 88 });
  });
});
