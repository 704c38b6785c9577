import { describe, expect, it } from "vitest";

import type { SessionState } from "../src/api.js";
import { renderPanel, renderPreview, renderQuiverSvg } from "../src/render.js";

const STATE: SessionState = {
  id: "abc",
  kind: "seed",
  data: {},
  path: [1, 2],
  history_length: 2,
  view: {
    n: 2,
    d: [2, 1],
    arrows: [[2, 1, 3]],
    b: [
      [0, 1],
      [-1, 0],
    ],
    x: ["1*x1^-1 + 1*x1^-1*x2*z1_1 + 1*x1^-1*x2^2", "1*x2"],
    y: [[], []],
  },
  state_hash: "deadbeef",
};

describe("quiver svg", () => {
  const positions = { 1: { x: 100, y: 100 }, 2: { x: 300, y: 100 } };

  it("draws clickable vertices with loop-degree badges", () => {
    const svg = renderQuiverSvg(STATE.view, positions, 400, 200);
    expect(svg).toContain('data-vertex="1"');
    expect(svg).toContain('data-vertex="2"');
    expect(svg).toContain(">d=2<");
    expect(svg).toContain(">d=1<");
  });

  it("labels arrow multiplicities", () => {
    const svg = renderQuiverSvg(STATE.view, positions, 400, 200);
    expect(svg).toContain('class="multiplicity"');
    expect(svg).toContain(">3</text>");
  });

  it("flips edge direction after a matrix sign flip", () => {
    const flipped = {
      ...STATE.view,
      arrows: [[1, 2, 3]] as [number, number, number][],
    };
    const before = renderQuiverSvg(STATE.view, positions, 400, 200);
    const after = renderQuiverSvg(flipped, positions, 400, 200);
    expect(before).toContain('data-tail="2" data-head="1"');
    expect(after).toContain('data-tail="1" data-head="2"');
  });
});

describe("panels", () => {
  it("shows cluster variables verbatim from the server", () => {
    const html = renderPanel("cluster", STATE);
    for (const poly of STATE.view.x!) {
      const escaped = poly; // these strings contain no markup characters
      expect(html).toContain(escaped);
    }
  });

  it("renders the exchange matrix entries", () => {
    const html = renderPanel("matrix", STATE);
    expect(html).toContain("<td class=\"b-entry\">-1</td>");
  });

  it("shows the mutation path in the tables panel", () => {
    const html = renderPanel("tables", STATE);
    expect(html).toContain("1, 2");
    expect(html).toContain("deadbeef");
  });
});

describe("preview pane", () => {
  it("renders the diff payload without altering strings", () => {
    const html = renderPreview({
      k: 1,
      kind: "seed",
      diff: { new_x: "1*x1^-1 + 1*x2", cancelled: 2 },
      state_hash: "deadbeef",
    });
    expect(html).toContain("what-if: mutate at 1");
    expect(html).toContain("1*x1^-1 + 1*x2");
    expect(html).toContain("2");
  });

  it("renders nothing without a preview", () => {
    expect(renderPreview(null)).toBe("");
  });
});
