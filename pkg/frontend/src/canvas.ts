/**
 * Canvas view: draws the conic pair, the server-computed locus, and the
 * animated triangle. The only client-side geometry is linear interpolation
 * between prefetched triangle snapshots.
 */

import type { ApiClient, FamilyGeometry, TriangleResponse } from "./api";
import { familyBody } from "./api";
import type { ExperimentState } from "./state";

const TWO_PI = 2 * Math.PI;
const SNAPSHOT_STEP = TWO_PI / 48;

export interface ViewData {
  state: ExperimentState;
  points: [number, number][];
  triangle: [number, number][] | null;
  familyGeometry: FamilyGeometry | null;
}

export function drawView(ctx: CanvasRenderingContext2D, view: ViewData): void {
  const { canvas } = ctx;
  const { state } = view;
  const dark = state.styleMode !== "wireframe";
  ctx.fillStyle = dark ? "#101018" : "#ffffff";
  ctx.fillRect(0, 0, canvas.width, canvas.height);

  const outer = view.familyGeometry?.outer ?? [state.a, state.b];
  let maxX = outer[0];
  let maxY = outer[1];
  for (const [x, y] of view.points) {
    maxX = Math.max(maxX, Math.abs(x));
    maxY = Math.max(maxY, Math.abs(y));
  }
  if (view.triangle) {
    for (const [x, y] of view.triangle) {
      maxX = Math.max(maxX, Math.abs(x));
      maxY = Math.max(maxY, Math.abs(y));
    }
  }
  const margin = 0.92;
  const scale = margin * Math.min(canvas.width / (2 * maxX), canvas.height / (2 * maxY));
  const toPx = ([x, y]: [number, number]): [number, number] => [
    canvas.width / 2 + x * scale,
    canvas.height / 2 - y * scale,
  ];

  ctx.lineWidth = 1;
  ctx.strokeStyle = dark ? "#4a4a5e" : "#707070";
  ctx.beginPath();
  ctx.ellipse(canvas.width / 2, canvas.height / 2, outer[0] * scale, outer[1] * scale, 0, 0, TWO_PI);
  ctx.stroke();
  if (view.familyGeometry) {
    const [ca, cb] = view.familyGeometry.caustic;
    ctx.strokeStyle = dark ? "#3a3a4c" : "#9a9a9a";
    ctx.beginPath();
    ctx.ellipse(canvas.width / 2, canvas.height / 2, ca * scale, cb * scale, 0, 0, TWO_PI);
    ctx.stroke();
  }

  if (view.points.length > 1) {
    ctx.lineWidth = dark ? 4 : 1.6;
    ctx.strokeStyle = dark ? "#8fd4b8" : "#b03434";
    ctx.beginPath();
    const first = toPx(view.points[0]!);
    ctx.moveTo(first[0], first[1]);
    for (const p of view.points.slice(1)) {
      const [px, py] = toPx(p);
      ctx.lineTo(px, py);
    }
    ctx.closePath();
    ctx.stroke();
  }

  if (view.triangle && view.triangle.length === 3) {
    ctx.lineWidth = 1.2;
    ctx.strokeStyle = dark ? "#b8bdd4" : "#3a3a3a";
    ctx.beginPath();
    const [v1, v2, v3] = view.triangle.map(toPx) as [number, number][];
    ctx.moveTo(v1![0]!, v1![1]!);
    ctx.lineTo(v2![0]!, v2![1]!);
    ctx.lineTo(v3![0]!, v3![1]!);
    ctx.closePath();
    ctx.stroke();
  }
}

interface Snapshot {
  t: number;
  vertices: [number, number][];
}

/**
 * Animation source: advances the family parameter at the chosen speed and
 * linearly interpolates between prefetched snapshots; if the next snapshot
 * has not arrived yet it degrades to holding the last one.
 */
export class TrianglePlayer {
  playing = false;
  phase = 0;

  private prev: Snapshot | null = null;
  private next: Snapshot | null = null;
  private fetching = false;
  private generation = 0;

  constructor(private readonly api: Pick<ApiClient, "triangle">) {}

  reset(): void {
    this.generation++;
    this.prev = null;
    this.next = null;
    this.fetching = false;
    this.phase = 0;
  }

  current(): [number, number][] | null {
    if (!this.prev) return null;
    if (!this.next || this.next.t === this.prev.t) return this.prev.vertices;
    const span = this.next.t - this.prev.t;
    const f = Math.min(Math.max((this.phase - this.prev.t) / span, 0), 1);
    return this.prev.vertices.map((v, i) => {
      const w = this.next!.vertices[i]!;
      return [v[0]! + f * (w[0]! - v[0]!), v[1]! + f * (w[1]! - v[1]!)] as [number, number];
    });
  }

  /** Advance the animation clock; `dtSeconds * speed` radians per second. */
  tick(dtSeconds: number, state: ExperimentState): void {
    if (!this.playing) return;
    this.phase += dtSeconds * state.speed;
    if (this.next && this.phase >= this.next.t) {
      this.prev = this.next;
      this.next = null;
    }
    this.ensureNext(state);
  }

  ensureNext(state: ExperimentState): void {
    if (this.fetching) return;
    const generation = this.generation;
    const wantT = this.prev === null ? this.phase : this.prev.t + SNAPSHOT_STEP;
    this.fetching = true;
    this.api
      .triangle(familyBody(state), wantT, state.derived)
      .then((response: TriangleResponse) => {
        if (generation !== this.generation) return;
        const snapshot = { t: wantT, vertices: response.vertices };
        if (this.prev === null) {
          this.prev = snapshot;
        } else {
          this.next = snapshot;
        }
      })
      .catch(() => {
        /* degrade to static frames */
      })
      .finally(() => {
        if (generation === this.generation) this.fetching = false;
      });
  }
}
