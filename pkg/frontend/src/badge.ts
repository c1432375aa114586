/**
 * Classification badge: the tracked point's label plus the server's verdict,
 * abbreviated to "(E)" exactly when the locus is numerically an ellipse.
 */

import type { ExperimentState } from "./state";

export function targetLabel(state: ExperimentState): string {
  const point = state.center !== null ? `X${state.center}` : `vertex ${state.vertex}`;
  return state.derived === "reference" ? point : `${state.derived} ${point}`;
}

export function badgeText(label: string, kind: string | null): string {
  if (kind === null) return label;
  return kind === "ellipse" ? `${label} (E)` : `${label} (${kind})`;
}
