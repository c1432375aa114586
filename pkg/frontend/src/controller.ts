/**
 * Headless application state machine: owns the experiment state, keeps the
 * URL fragment in sync, debounces parameter-driven locus requests (100 ms),
 * and drops stale responses. The DOM layer only forwards events here.
 */

import type { ApiClient, ClassificationPayload, FamilyGeometry, LocusResponse } from "./api";
import { locusRequestBody } from "./api";
import { badgeText, targetLabel } from "./badge";
import { debounce, realScheduler, type Debounced, type Scheduler } from "./debounce";
import {
  defaultState,
  fragmentFor,
  stateFromFragment,
  validateState,
  type ExperimentState,
} from "./state";

export const DEBOUNCE_MS = 100;

export interface ControllerDeps {
  api: Pick<ApiClient, "locus">;
  writeFragment(fragment: string): void;
  onLocus?(locus: LocusResponse, state: ExperimentState): void;
  onError?(error: unknown): void;
  scheduler?: Scheduler;
}

export class AppController {
  state: ExperimentState = defaultState();
  classification: ClassificationPayload | null = null;
  points: [number, number][] = [];
  familyGeometry: FamilyGeometry | null = null;
  droppedSamples = 0;

  private generation = 0;
  private readonly refreshSoon: Debounced<[]>;

  constructor(private readonly deps: ControllerDeps) {
    this.refreshSoon = debounce(
      () => void this.refreshNow(),
      DEBOUNCE_MS,
      deps.scheduler ?? realScheduler,
    );
  }

  /** Restore state from a `#s=<blob>` fragment (or fall back to the default
   * view) and issue the initial locus request immediately. */
  initFromFragment(fragment: string | null | undefined): ExperimentState {
    const restored = stateFromFragment(fragment);
    this.state = restored ?? defaultState();
    this.deps.writeFragment(fragmentFor(this.state));
    void this.refreshNow();
    return this.state;
  }

  /** Apply a validated partial update; the locus refresh is debounced. */
  update(changes: Partial<ExperimentState>): void {
    const next = { ...this.state, ...changes };
    validateState(next);
    this.state = next;
    this.deps.writeFragment(fragmentFor(next));
    this.refreshSoon();
  }

  setAspect(a: number): void {
    this.update({ a });
  }

  setCenter(k: number): void {
    this.update({ center: k, vertex: null });
  }

  setVertex(i: number): void {
    this.update({ center: null, vertex: i });
  }

  badge(): string {
    return badgeText(targetLabel(this.state), this.classification?.kind ?? null);
  }

  shareFragment(): string {
    return fragmentFor(this.state);
  }

  async refreshNow(): Promise<void> {
    const generation = ++this.generation;
    try {
      const locus = await this.deps.api.locus(locusRequestBody(this.state));
      if (generation !== this.generation) return; // superseded meanwhile
      this.points = locus.points;
      this.classification = locus.classification;
      this.familyGeometry = locus.family;
      this.droppedSamples = locus.dropped_samples;
      this.deps.onLocus?.(locus, this.state);
    } catch (error) {
      if (generation !== this.generation) return;
      this.deps.onError?.(error);
    }
  }
}
