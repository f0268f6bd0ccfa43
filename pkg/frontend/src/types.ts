/** Wire types of the polystatics HTTP API. */

export interface Counts {
  v: number;
  e: number;
  f: number;
  c: number;
}

export interface ComplexDoc {
  role: "form" | "force";
  direction: "inward" | "outward";
  stress_cell: number;
  vertices: number[][];
  faces: number[][];
  cells: number[][];
  edges: number[][];
  face_normals: number[][];
  active: {
    excluded_cell: number;
    exterior_cell: number;
    face_ids: number[];
    cell_ids: number[];
    equation_edge_ids: number[];
  };
  counts: { full: Counts; working: Counts };
}

export interface Analysis {
  counts: Counts;
  rank: number;
  dof: number;
  independent_faces: number[];
  independent_face_ids: number[];
  singular_values: number[];
  sv_above: number;
  sv_below: number;
  collapses_to_point: boolean;
}

export type SolveMethod = "mpi" | "rref" | "lp";

export interface SolveRequest {
  method: SolveMethod;
  xi?: number[];
  zeta?: number[];
  lambda?: number[];
  anchor_cell?: number;
  anchor_point?: [number, number, number];
}

export interface DualFacePayload {
  primal_edge: number;
  fan_faces: number[];
  vertex_cycle: number[];
}

export interface DualPayload {
  vertices: number[][];
  cell_ids: number[];
  edges: [number, number, number][];
  edge_vectors: number[][];
  faces: DualFacePayload[];
  anchor_cell: number;
  anchor_point: number[];
}

export type MemberForce = "compressive" | "tensile" | "zero";

export interface SolveResponse {
  method: SolveMethod;
  q: number[];
  dof: number;
  independent_faces: number[];
  independent_face_ids: number[];
  dual: DualPayload;
  member_forces: MemberForce[];
  labels_apply_to: string;
  residuals: Record<string, number>;
  reciprocity: { ok: boolean; lines: string[] };
  status: "ok" | "degraded" | "failed";
}

export interface ApiErrorBody {
  error: string;
  detail: string;
}
