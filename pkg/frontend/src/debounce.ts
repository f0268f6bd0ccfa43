/** Trailing debounce: the wrapped call runs once, waitMs after the last call. */

export interface Debounced<A extends unknown[]> {
  (...args: A): void;
  cancel(): void;
  flush(): void;
  pending(): boolean;
}

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): Debounced<A> {
  let handle: ReturnType<typeof setTimeout> | null = null;
  let lastArgs: A | null = null;

  const wrapped = (...args: A) => {
    lastArgs = args;
    if (handle !== null) clearTimeout(handle);
    handle = setTimeout(() => {
      handle = null;
      const a = lastArgs as A;
      lastArgs = null;
      fn(...a);
    }, waitMs);
  };
  wrapped.cancel = () => {
    if (handle !== null) clearTimeout(handle);
    handle = null;
    lastArgs = null;
  };
  wrapped.flush = () => {
    if (handle === null) return;
    clearTimeout(handle);
    handle = null;
    const a = lastArgs as A;
    lastArgs = null;
    fn(...a);
  };
  wrapped.pending = () => handle !== null;
  return wrapped;
}
