/**
 * SVG and panel rendering as pure string builders.
 *
 * Every polynomial, matrix entry and potential shown here is the verbatim
 * server string; there is no arithmetic in this module beyond coordinates.
 */

import type { PreviewPayload, SessionState, ViewPayload } from "./api.js";
import type { Point } from "./layout.js";
import type { Panel } from "./state.js";

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderQuiverSvg(
  view: ViewPayload,
  positions: Record<number, Point>,
  width: number,
  height: number,
): string {
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" ` +
      `width="${width}" height="${height}">`,
  );
  parts.push(
    '<defs><marker id="arrowhead" markerWidth="8" markerHeight="6" refX="7" ' +
      'refY="3" orient="auto"><polygon points="0 0, 8 3, 0 6" fill="#444"/>' +
      "</marker></defs>",
  );
  for (const [tail, head, count] of view.arrows) {
    const a = positions[tail];
    const b = positions[head];
    if (!a || !b) continue;
    const dx = b.x - a.x;
    const dy = b.y - a.y;
    const len = Math.max(Math.hypot(dx, dy), 1);
    const trim = 26;
    const x1 = a.x + (dx / len) * trim;
    const y1 = a.y + (dy / len) * trim;
    const x2 = b.x - (dx / len) * trim;
    const y2 = b.y - (dy / len) * trim;
    parts.push(
      `<line class="arrow" data-tail="${tail}" data-head="${head}" ` +
        `x1="${x1.toFixed(1)}" y1="${y1.toFixed(1)}" x2="${x2.toFixed(1)}" ` +
        `y2="${y2.toFixed(1)}" stroke="#444" stroke-width="1.6" ` +
        'marker-end="url(#arrowhead)"/>',
    );
    if (count > 1) {
      const mx = (x1 + x2) / 2;
      const my = (y1 + y2) / 2 - 6;
      parts.push(
        `<text class="multiplicity" x="${mx.toFixed(1)}" y="${my.toFixed(1)}" ` +
          `font-size="12" fill="#c0392b" text-anchor="middle">${count}</text>`,
      );
    }
  }
  for (let v = 1; v <= view.n; v += 1) {
    const p = positions[v];
    if (!p) continue;
    const degree = view.d[v - 1];
    parts.push(
      `<g class="vertex" data-vertex="${v}" cursor="pointer">` +
        `<circle cx="${p.x.toFixed(1)}" cy="${p.y.toFixed(1)}" r="20" ` +
        'fill="#eef4ff" stroke="#2c5faa" stroke-width="2"/>' +
        `<text x="${p.x.toFixed(1)}" y="${(p.y + 5).toFixed(1)}" ` +
        `font-size="15" text-anchor="middle">${v}</text>` +
        `<text class="loop-badge" x="${(p.x + 17).toFixed(1)}" ` +
        `y="${(p.y - 15).toFixed(1)}" font-size="11" fill="#8e44ad">` +
        `d=${degree}</text>` +
        "</g>",
    );
  }
  parts.push("</svg>");
  return parts.join("");
}

export function renderPanel(panel: Panel, state: SessionState): string {
  const view = state.view;
  if (panel === "matrix") {
    const rows = view.b
      .map(
        (row) =>
          `<tr>${row.map((v) => `<td class="b-entry">${v}</td>`).join("")}</tr>`,
      )
      .join("");
    return `<table class="matrix">${rows}</table>`;
  }
  if (panel === "cluster") {
    if (!view.x) return "<p>This session has no cluster variables.</p>";
    const items = view.x
      .map(
        (poly, i) =>
          `<li><span class="var-name">x${i + 1}</span> = ` +
          `<code class="poly" data-index="${i}">${escapeXml(poly)}</code></li>`,
      )
      .join("");
    return `<ul class="cluster">${items}</ul>`;
  }
  if (panel === "potential") {
    if (view.potential === undefined) {
      return "<p>This session has no potential.</p>";
    }
    const reduced = view.reduced ? "reduced" : "not reduced";
    return (
      `<p class="reduced-flag">${reduced}</p>` +
      `<code class="potential">${escapeXml(view.potential)}</code>`
    );
  }
  // tables panel: mutation path plus y-data; numeric tables come from the
  // server's records when the shell fetches them
  const path = state.path.length ? state.path.join(", ") : "(initial)";
  const ys = (view.y ?? [])
    .map((exps, i) => `<li>y${i + 1}: (${exps.join(", ")})</li>`)
    .join("");
  return (
    `<p>mutation path: ${path}</p>` +
    `<ul class="tropical-y">${ys}</ul>` +
    `<p>state hash: <code>${state.state_hash}</code></p>`
  );
}

export function renderPreview(preview: PreviewPayload | null): string {
  if (!preview) return "";
  const entries = Object.entries(preview.diff)
    .map(([key, value]) => {
      const text =
        typeof value === "string" ? escapeXml(value) : escapeXml(JSON.stringify(value));
      return `<dt>${escapeXml(key)}</dt><dd><code>${text}</code></dd>`;
    })
    .join("");
  return (
    `<div class="preview" data-k="${preview.k}">` +
    `<h3>what-if: mutate at ${preview.k}</h3><dl>${entries}</dl></div>`
  );
}

export function renderError(message: string | null): string {
  if (!message) return "";
  return `<div class="error-banner">${escapeXml(message)}</div>`;
}
