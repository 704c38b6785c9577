/**
 * View state: a pure function of the last fetched session state plus layout
 * and panel choices. Reducers below never touch the payload contents; the
 * server is the single source of mathematical truth.
 */

import type { PreviewPayload, SessionState } from "./api.js";
import type { Point } from "./layout.js";

export type Panel = "matrix" | "cluster" | "tables" | "potential";

export interface ViewState {
  sessionId: string | null;
  server: SessionState | null;
  preview: PreviewPayload | null;
  panel: Panel;
  positions: Record<number, Point>;
  pinned: Record<number, Point>;
  error: string | null;
  busy: boolean;
  historyCursor: number;
}

export function initialViewState(): ViewState {
  return {
    sessionId: null,
    server: null,
    preview: null,
    panel: "cluster",
    positions: {},
    pinned: {},
    error: null,
    busy: false,
    historyCursor: 0,
  };
}

export type Action =
  | { type: "session-opened"; id: string; state: SessionState }
  | { type: "state-fetched"; state: SessionState }
  | { type: "preview-fetched"; preview: PreviewPayload }
  | { type: "preview-cleared" }
  | { type: "panel-selected"; panel: Panel }
  | { type: "positions-computed"; positions: Record<number, Point> }
  | { type: "vertex-pinned"; vertex: number; point: Point }
  | { type: "busy"; busy: boolean }
  | { type: "failed"; message: string };

export function reduce(state: ViewState, action: Action): ViewState {
  switch (action.type) {
    case "session-opened":
      return {
        ...initialViewState(),
        sessionId: action.id,
        server: action.state,
        panel: state.panel,
        historyCursor: action.state.history_length,
      };
    case "state-fetched":
      return {
        ...state,
        server: action.state,
        preview: null,
        error: null,
        busy: false,
        historyCursor: action.state.history_length,
      };
    case "preview-fetched":
      return { ...state, preview: action.preview, error: null, busy: false };
    case "preview-cleared":
      return { ...state, preview: null };
    case "panel-selected":
      return { ...state, panel: action.panel };
    case "positions-computed":
      return { ...state, positions: action.positions };
    case "vertex-pinned":
      return {
        ...state,
        pinned: { ...state.pinned, [action.vertex]: action.point },
      };
    case "busy":
      return { ...state, busy: action.busy };
    case "failed":
      return { ...state, error: action.message, busy: false };
    default:
      return state;
  }
}

const PIN_STORE_PREFIX = "gencluster-pins-";

export interface PinStorage {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

export function loadPins(sessionId: string, storage: PinStorage): Record<number, Point> {
  const raw = storage.getItem(PIN_STORE_PREFIX + sessionId);
  if (!raw) return {};
  try {
    return JSON.parse(raw) as Record<number, Point>;
  } catch {
    return {};
  }
}

export function savePins(
  sessionId: string,
  pins: Record<number, Point>,
  storage: PinStorage,
): void {
  storage.setItem(PIN_STORE_PREFIX + sessionId, JSON.stringify(pins));
}
