import { ApiError, SolverApi } from "./api";
import { Debounced, debounce } from "./debounce";
import {
  Analysis,
  ComplexDoc,
  SolveMethod,
  SolveRequest,
  SolveResponse,
} from "./types";

/** One slider per independent dual edge (a non-pivot column). */
export interface Slider {
  column: number; // column index into the working face list
  faceId: number; // primal face id, for labeling
  value: number;
}

export interface SessionState {
  phase: "loading" | "ready" | "blocked";
  complex: ComplexDoc | null;
  analysis: Analysis | null;
  method: SolveMethod;
  anchorCell: number | null;
  sliders: Slider[];
  /** Last solve whose reciprocity check passed; what the scene shows. */
  displayed: SolveResponse | null;
  /** Non-fatal message shown inline; the last good dual stays on screen. */
  error: string | null;
  /** Out-of-tolerance but usable response: shown with a warning badge. */
  degraded: boolean;
  solving: boolean;
}

type Listener = (state: SessionState) => void;

const DEBOUNCE_MS = 150;

/**
 * Holds the session and funnels every mutation through one path:
 * slider/method change -> debounced solve request -> state update.
 * At most one request is in flight; a newer one aborts and supersedes it.
 */
export class SessionStore {
  readonly state: SessionState = {
    phase: "loading",
    complex: null,
    analysis: null,
    method: "rref",
    anchorCell: null,
    sliders: [],
    displayed: null,
    error: null,
    degraded: false,
    solving: false,
  };

  private listeners: Listener[] = [];
  private seq = 0;
  private controller: AbortController | null = null;
  private readonly scheduleSolve: Debounced<[]>;

  constructor(
    private readonly api: SolverApi,
    debounceMs: number = DEBOUNCE_MS,
  ) {
    this.scheduleSolve = debounce(() => void this.solveNow(), debounceMs);
  }

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  private emit(): void {
    for (const l of this.listeners) l(this.state);
  }

  /** Fetch geometry and analysis; build one unit slider per independent edge. */
  async load(): Promise<void> {
    this.state.phase = "loading";
    this.emit();
    try {
      const [complex, analysis] = await Promise.all([
        this.api.getComplex(),
        this.api.getAnalysis(),
      ]);
      this.state.complex = complex;
      this.state.analysis = analysis;
      this.state.anchorCell = complex.active.cell_ids[0] ?? null;
      this.state.sliders = analysis.independent_faces.map((column, k) => ({
        column,
        faceId: analysis.independent_face_ids[k],
        value: 1,
      }));
      this.state.phase = "ready";
      this.state.error = analysis.collapses_to_point
        ? "degrees of freedom = 0: the dual collapses to a point"
        : null;
      this.emit();
      if (!analysis.collapses_to_point) await this.solveNow();
    } catch (err) {
      this.state.phase = "blocked";
      this.state.error = describe(err);
      this.emit();
    }
  }

  setSlider(column: number, value: number): void {
    const slider = this.state.sliders.find((s) => s.column === column);
    if (!slider || !Number.isFinite(value)) return;
    slider.value = value;
    this.emit();
    this.scheduleSolve();
  }

  setMethod(method: SolveMethod): void {
    if (method === this.state.method) return;
    this.state.method = method;
    this.emit();
    this.scheduleSolve();
  }

  setAnchor(cell: number): void {
    this.state.anchorCell = cell;
    this.emit();
    this.scheduleSolve();
  }

  buildRequest(): SolveRequest {
    const req: SolveRequest = { method: this.state.method };
    if (this.state.anchorCell !== null) req.anchor_cell = this.state.anchorCell;
    if (this.state.method === "rref") {
      req.zeta = this.state.sliders.map((s) => s.value);
    }
    return req;
  }

  /** Issue the solve immediately (bypassing the debounce). Latest wins. */
  async solveNow(): Promise<void> {
    const mySeq = ++this.seq;
    this.controller?.abort();
    this.controller = new AbortController();
    this.state.solving = true;
    this.emit();
    try {
      const resp = await this.api.solve(this.buildRequest(), this.controller.signal);
      if (mySeq !== this.seq) return; // superseded
      this.state.solving = false;
      if (!resp.reciprocity.ok && resp.status === "failed") {
        // never display a dual that failed its reciprocity check
        this.state.error = "solver response failed the reciprocity check";
        this.state.degraded = false;
      } else {
        this.state.displayed = resp;
        this.state.degraded = resp.status === "degraded";
        this.state.error = null;
      }
      this.emit();
    } catch (err) {
      if (mySeq !== this.seq) return;
      if (err instanceof DOMException && err.name === "AbortError") return;
      this.state.solving = false;
      this.state.error = describe(err); // previous dual stays displayed
      this.emit();
    }
  }

  flushPending(): void {
    this.scheduleSolve.flush();
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return `${err.code}: ${err.message}`;
  if (err instanceof Error) return err.message;
  return String(err);
}
