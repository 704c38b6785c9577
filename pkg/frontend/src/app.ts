/**
 * Browser shell: wires the session client, reducers and renderers to DOM.
 * One in-flight mutation at a time; previews may run concurrently.
 */

import { SessionClient, ApiError } from "./api.js";
import { layoutQuiver } from "./layout.js";
import { renderError, renderPanel, renderPreview, renderQuiverSvg } from "./render.js";
import {
  Action,
  Panel,
  ViewState,
  initialViewState,
  loadPins,
  reduce,
  savePins,
} from "./state.js";

const WIDTH = 560;
const HEIGHT = 420;

const EXAMPLE_SEED = {
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

export class ExplorerApp {
  private state: ViewState = initialViewState();
  private mutationInFlight = false;

  constructor(
    private readonly client: SessionClient,
    private readonly root: HTMLElement,
    private readonly storage: Storage = window.localStorage,
  ) {}

  private dispatch(action: Action): void {
    this.state = reduce(this.state, action);
    this.render();
  }

  async open(payload: Record<string, unknown>): Promise<void> {
    this.dispatch({ type: "busy", busy: true });
    try {
      const created = await this.client.createSession(payload);
      const state = await this.client.state(created.id);
      this.dispatch({ type: "session-opened", id: created.id, state });
      this.state = {
        ...this.state,
        pinned: loadPins(created.id, this.storage),
      };
      this.relayout();
    } catch (err) {
      this.dispatch({ type: "failed", message: describe(err) });
    }
  }

  async openExample(): Promise<void> {
    await this.open(EXAMPLE_SEED);
  }

  async clickMutate(k: number): Promise<void> {
    if (!this.state.sessionId || this.mutationInFlight) return;
    this.mutationInFlight = true;
    this.dispatch({ type: "busy", busy: true });
    try {
      const state = await this.client.mutate(this.state.sessionId, k);
      this.dispatch({ type: "state-fetched", state });
      this.relayout();
    } catch (err) {
      this.dispatch({ type: "failed", message: describe(err) });
    } finally {
      this.mutationInFlight = false;
    }
  }

  async preview(k: number): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      const preview = await this.client.preview(this.state.sessionId, k);
      this.dispatch({ type: "preview-fetched", preview });
    } catch (err) {
      this.dispatch({ type: "failed", message: describe(err) });
    }
  }

  async undo(): Promise<void> {
    if (!this.state.sessionId || this.mutationInFlight) return;
    this.mutationInFlight = true;
    try {
      const state = await this.client.undo(this.state.sessionId);
      this.dispatch({ type: "state-fetched", state });
      this.relayout();
    } catch (err) {
      this.dispatch({ type: "failed", message: describe(err) });
    } finally {
      this.mutationInFlight = false;
    }
  }

  selectPanel(panel: Panel): void {
    this.dispatch({ type: "panel-selected", panel });
  }

  pinVertex(vertex: number, x: number, y: number): void {
    this.dispatch({ type: "vertex-pinned", vertex, point: { x, y } });
    if (this.state.sessionId) {
      savePins(this.state.sessionId, this.state.pinned, this.storage);
    }
    this.relayout();
  }

  private relayout(): void {
    const server = this.state.server;
    if (!server) return;
    const positions = layoutQuiver(server.view.n, server.view.arrows, {
      width: WIDTH,
      height: HEIGHT,
      pinned: this.state.pinned,
    });
    this.dispatch({ type: "positions-computed", positions });
  }

  render(): void {
    const { server, panel, positions, preview, error, busy } = this.state;
    const quiver = server
      ? renderQuiverSvg(server.view, positions, WIDTH, HEIGHT)
      : "<p>No session. Load the example or paste a payload.</p>";
    const panelHtml = server ? renderPanel(panel, server) : "";
    this.root.innerHTML = `
      ${renderError(error)}
      <div class="toolbar">
        <button id="load-example">example seed</button>
        <button id="undo" ${server && server.history_length > 0 ? "" : "disabled"}>undo</button>
        <span class="busy">${busy ? "working..." : ""}</span>
        <nav class="panels">
          ${(["matrix", "cluster", "tables", "potential"] as Panel[])
            .map(
              (p) =>
                `<button class="panel-pick${p === panel ? " active" : ""}" data-panel="${p}">${p}</button>`,
            )
            .join("")}
        </nav>
      </div>
      <div class="stage">${quiver}</div>
      <aside class="panel">${panelHtml}</aside>
      <aside class="preview-pane">${renderPreview(preview)}</aside>
    `;
    this.wire();
  }

  private wire(): void {
    this.root.querySelector("#load-example")?.addEventListener("click", () => {
      void this.openExample();
    });
    this.root.querySelector("#undo")?.addEventListener("click", () => {
      void this.undo();
    });
    this.root.querySelectorAll(".panel-pick").forEach((button) => {
      button.addEventListener("click", () => {
        const panel = (button as HTMLElement).dataset.panel as Panel;
        this.selectPanel(panel);
      });
    });
    this.root.querySelectorAll(".vertex").forEach((group) => {
      const vertex = Number((group as HTMLElement).dataset.vertex);
      group.addEventListener("click", () => void this.clickMutate(vertex));
      group.addEventListener("mouseenter", () => void this.preview(vertex));
      group.addEventListener("mouseleave", () =>
        this.dispatch({ type: "preview-cleared" }),
      );
    });
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return `server: ${err.message}`;
  return err instanceof Error ? err.message : String(err);
}

export function boot(baseUrl = "http://127.0.0.1:8787"): ExplorerApp {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app element");
  const app = new ExplorerApp(new SessionClient(baseUrl), root);
  app.render();
  return app;
}
