import { MemberForce } from "./types";

/** Visual encoding of member force labels. */
export interface MemberStyle {
  color: string;
  dashed: boolean;
}

export const MEMBER_STYLES: Record<MemberForce, MemberStyle> = {
  compressive: { color: "#3b82f6", dashed: false }, // blue
  tensile: { color: "#f97316", dashed: false }, // orange
  zero: { color: "#9ca3af", dashed: true }, // grey, dashed
};

export const PRIMAL_EDGE_COLOR = "#64748b";
export const PRIMAL_FACE_COLOR = "#94a3b8";
export const DUAL_FACE_COLOR = "#a5b4fc";

export function memberStyle(label: MemberForce): MemberStyle {
  return MEMBER_STYLES[label] ?? MEMBER_STYLES.zero;
}
