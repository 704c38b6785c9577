/**
 * Small deterministic force layout for the quiver drawing.
 * Runs a fixed number of iterations from a circular start so the same view
 * payload always produces the same positions; pinned positions survive
 * re-layout and are persisted per session by the shell.
 */

export interface Point {
  x: number;
  y: number;
}

export interface LayoutOptions {
  width: number;
  height: number;
  iterations?: number;
  pinned?: Record<number, Point>;
}

export function layoutQuiver(
  n: number,
  arrows: [number, number, number][],
  options: LayoutOptions,
): Record<number, Point> {
  const { width, height } = options;
  const iterations = options.iterations ?? 120;
  const pinned = options.pinned ?? {};
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 2 - 50;
  const pos: Record<number, Point> = {};
  for (let v = 1; v <= n; v += 1) {
    const angle = (2 * Math.PI * (v - 1)) / Math.max(n, 1) - Math.PI / 2;
    pos[v] = pinned[v]
      ? { ...pinned[v] }
      : { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) };
  }
  if (n <= 1) return pos;
  const ideal = (2 * radius * Math.sin(Math.PI / n)) || radius;
  for (let step = 0; step < iterations; step += 1) {
    const force: Record<number, Point> = {};
    for (let v = 1; v <= n; v += 1) force[v] = { x: 0, y: 0 };
    for (let v = 1; v <= n; v += 1) {
      for (let w = v + 1; w <= n; w += 1) {
        const dx = pos[v].x - pos[w].x;
        const dy = pos[v].y - pos[w].y;
        const dist = Math.max(Math.hypot(dx, dy), 1);
        const push = (ideal * ideal) / dist / dist;
        force[v].x += dx * push;
        force[v].y += dy * push;
        force[w].x -= dx * push;
        force[w].y -= dy * push;
      }
    }
    for (const [tail, head] of arrows) {
      const dx = pos[head].x - pos[tail].x;
      const dy = pos[head].y - pos[tail].y;
      const dist = Math.max(Math.hypot(dx, dy), 1);
      const pull = (dist - ideal) / dist / 8;
      force[tail].x += dx * pull;
      force[tail].y += dy * pull;
      force[head].x -= dx * pull;
      force[head].y -= dy * pull;
    }
    const damping = 0.08 * (1 - step / iterations);
    for (let v = 1; v <= n; v += 1) {
      if (pinned[v]) continue;
      pos[v].x += force[v].x * damping;
      pos[v].y += force[v].y * damping;
      pos[v].x = Math.min(Math.max(pos[v].x, 40), width - 40);
      pos[v].y = Math.min(Math.max(pos[v].y, 40), height - 40);
    }
  }
  return pos;
}
