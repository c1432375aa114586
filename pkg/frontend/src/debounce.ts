/** Trailing-edge debounce with injectable timers so tests can run headless. */

export interface Scheduler {
  set(fn: () => void, ms: number): unknown;
  clear(handle: unknown): void;
}

export const realScheduler: Scheduler = {
  set: (fn, ms) => setTimeout(fn, ms),
  clear: (handle) => clearTimeout(handle as ReturnType<typeof setTimeout>),
};

export interface Debounced<A extends unknown[]> {
  (...args: A): void;
  cancel(): void;
  flush(): void;
}

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  ms: number,
  scheduler: Scheduler = realScheduler,
): Debounced<A> {
  let handle: unknown = null;
  let pending: A | null = null;

  const run = () => {
    handle = null;
    if (pending !== null) {
      const args = pending;
      pending = null;
      fn(...args);
    }
  };

  const debounced = (...args: A) => {
    pending = args;
    if (handle !== null) scheduler.clear(handle);
    handle = scheduler.set(run, ms);
  };
  debounced.cancel = () => {
    if (handle !== null) scheduler.clear(handle);
    handle = null;
    pending = null;
  };
  debounced.flush = () => {
    if (handle !== null) scheduler.clear(handle);
    run();
  };
  return debounced;
}
