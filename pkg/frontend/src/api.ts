/**
 * Typed client for the JSON service. All geometry is computed server-side;
 * the UI displays classifications verbatim.
 */

import type { DerivedKind, ExperimentState, FamilyKind, StyleMode } from "./state";

export const API_PATHS = {
  families: "/api/families",
  centers: "/api/centers",
  locus: "/api/locus",
  triangle: "/api/triangle",
  render: "/api/render",
  state: "/api/state/",
} as const;

export interface FamilyBody {
  kind: FamilyKind;
  a: number;
  b: number;
  free?: number;
}

export type TargetBody = { center: number } | { vertex: number };

export interface LocusRequestBody {
  family: FamilyBody;
  target: TargetBody;
  derived?: DerivedKind;
  samples?: number;
}

export interface ClassificationPayload {
  kind: string;
  conic_residual: number;
  quartic_residual: number;
  self_intersections: number;
}

export interface FamilyGeometry {
  outer: [number, number];
  caustic: [number, number];
}

export interface LocusResponse {
  points: [number, number][];
  classification: ClassificationPayload;
  dropped_samples: number;
  family: FamilyGeometry;
}

export interface TriangleResponse {
  vertices: [number, number][];
  porism_residual: number;
  centers: Record<string, [number, number]>;
}

export interface FamilyInfo {
  kind: FamilyKind;
  params_schema: Record<string, string>;
  expected_stationary_center: number | null;
}

export interface CenterInfo {
  k: number;
  name: string;
}

export interface StyleBody {
  mode: StyleMode;
  stroke_width?: number;
  background?: string;
  palette_seed?: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export function familyBody(state: ExperimentState): FamilyBody {
  const body: FamilyBody = { kind: state.familyKind, a: state.a, b: state.b };
  if (state.free !== null) body.free = state.free;
  return body;
}

export function targetBody(state: ExperimentState): TargetBody {
  return state.center !== null ? { center: state.center } : { vertex: state.vertex! };
}

export function locusRequestBody(state: ExperimentState): LocusRequestBody {
  return {
    family: familyBody(state),
    target: targetBody(state),
    derived: state.derived,
    samples: state.samples,
  };
}

export class ApiClient {
  constructor(
    private readonly fetchFn: FetchLike = (...args) => fetch(...args),
    private readonly base = "",
  ) {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.base + path, init);
    if (!response.ok) {
      let code = "HttpError";
      let message = `${response.status}`;
      try {
        const err = (await response.json()) as { code?: string; message?: string };
        code = err.code ?? code;
        message = err.message ?? message;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(response.status, code, message);
    }
    return (await response.json()) as T;
  }

  private post(body: unknown): RequestInit {
    return {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    };
  }

  families(): Promise<FamilyInfo[]> {
    return this.json(API_PATHS.families);
  }

  centers(): Promise<CenterInfo[]> {
    return this.json(API_PATHS.centers);
  }

  locus(body: LocusRequestBody): Promise<LocusResponse> {
    return this.json(API_PATHS.locus, this.post(body));
  }

  triangle(family: FamilyBody, t: number, derived: DerivedKind, centers: number[] = []): Promise<TriangleResponse> {
    return this.json(API_PATHS.triangle, this.post({ family, t, derived, centers }));
  }

  async renderSvg(stateBlob: string, style?: StyleBody): Promise<string> {
    // the blob form carries the exact 64-bit palette seed, which JSON cannot
    const body: Record<string, unknown> = { state: stateBlob };
    if (style) body.style = style;
    const response = await this.fetchFn(this.base + API_PATHS.render, this.post(body));
    if (!response.ok) {
      throw new ApiError(response.status, "RenderFailed", `${response.status}`);
    }
    return response.text();
  }

  decodedState(blob: string): Promise<unknown> {
    return this.json(API_PATHS.state + encodeURIComponent(blob));
  }
}
