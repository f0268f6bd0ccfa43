import { vi } from "vitest";

import { SolverApi } from "../src/api";
import {
  Analysis,
  ComplexDoc,
  SolveRequest,
  SolveResponse,
} from "../src/types";

/** Tiny two-cell placeholder geometry; enough shape for the store and scene. */
export function fakeComplex(): ComplexDoc {
  return {
    role: "form",
    direction: "inward",
    stress_cell: 2,
    vertices: [
      [0, 0, 0],
      [1, 0, 0],
      [0, 1, 0],
      [0, 0, 1],
    ],
    faces: [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
    cells: [[0, 1, 2, 3], [0, 1, 2, 3]],
    edges: [
      [0, 1],
      [0, 2],
      [0, 3],
      [1, 2],
      [1, 3],
      [2, 3],
    ],
    face_normals: [
      [0, 0, 1],
      [0, 1, 0],
      [1, 0, 0],
      [0.577, 0.577, 0.577],
    ],
    active: {
      excluded_cell: 1,
      exterior_cell: 1,
      face_ids: [0, 1, 2, 3],
      cell_ids: [0],
      equation_edge_ids: [0, 1, 2],
    },
    counts: {
      full: { v: 4, e: 6, f: 4, c: 2 },
      working: { v: 4, e: 3, f: 4, c: 1 },
    },
  };
}

export function fakeAnalysis(dof = 1): Analysis {
  const independent = Array.from({ length: dof }, (_, k) => k);
  return {
    counts: { v: 4, e: 3, f: 4, c: 1 },
    rank: 4 - dof,
    dof,
    independent_faces: independent,
    independent_face_ids: independent.map((c) => c + 10),
    singular_values: [1, 0.5, 0.25, 0],
    sv_above: 0.25,
    sv_below: 0,
    collapses_to_point: dof === 0,
  };
}

/** Solve response whose dual scales linearly with zeta[0]; reciprocity ok. */
export function fakeSolve(req: SolveRequest): SolveResponse {
  const s = req.zeta?.[0] ?? 1;
  return {
    method: req.method,
    q: [s, s, s, s],
    dof: req.zeta?.length ?? 1,
    independent_faces: [0],
    independent_face_ids: [10],
    dual: {
      vertices: [
        [0, 0, 0],
        [s, 0, 0],
        [0, s, 0],
        [0, 0, s],
      ],
      cell_ids: [0, 1, 2, 3],
      edges: [
        [0, 1, 0],
        [0, 2, 1],
        [0, 3, 2],
        [1, 2, 3],
      ],
      edge_vectors: [
        [s, 0, 0],
        [0, s, 0],
        [0, 0, s],
        [-s, s, 0],
      ],
      faces: [
        { primal_edge: 0, fan_faces: [0, 1, 2], vertex_cycle: [0, 1, 2] },
      ],
      anchor_cell: 0,
      anchor_point: [0, 0, 0],
    },
    member_forces:
      s >= 0
        ? ["compressive", "compressive", "compressive", "tensile"]
        : ["tensile", "tensile", "tensile", "compressive"],
    labels_apply_to: "dual_members",
    residuals: { equilibrium: 1e-16, closure: 1e-16 },
    reciprocity: { ok: true, lines: [] },
    status: "ok",
  };
}

export interface FakeApi extends SolverApi {
  solveCalls: SolveRequest[];
}

export function fakeApi(overrides: Partial<SolverApi> = {}): FakeApi {
  const solveCalls: SolveRequest[] = [];
  const api: FakeApi = {
    solveCalls,
    getComplex: vi.fn(async () => fakeComplex()),
    getAnalysis: vi.fn(async () => fakeAnalysis()),
    solve: vi.fn(async (req: SolveRequest) => {
      solveCalls.push(req);
      return fakeSolve(req);
    }),
    ...overrides,
  } as FakeApi;
  return api;
}
