// Wire types for the scrapcad session service.  These mirror the JSON the
// server emits; everything is millimeters and degrees.

export interface GrainSpec {
  axis_deg: number;
  size: number;
  wobble: number;
  seed: number;
}

export interface Scrap {
  id: number;
  length_mm: number;
  width_mm: number;
  thickness_mm: number;
  material_kind: string;
  tag: string | null;
  grain: GrainSpec;
  color_rgb: number[];
  retired: boolean;
}

export interface Pose {
  translation: number[];         // [x, y, z]
  rotation: number[][];          // 3x3 row-major
}

export interface Part {
  id: number;
  source: number | null;         // scrap id, null = unassigned
  vertices: number[][];          // 8 local corners
  link_group: number | null;
  group: string | null;
  fabricated: boolean;
  pose: Pose;
}

export interface Placement {
  part_id: number;
  scrap_id: number;
  position_mm: number[];         // bbox-min of the placed footprint
  rotation_deg: number;          // 0 | 90 | 180 | 270
  pinned: boolean;
}

export interface CutPlan {
  scrap_id: number;
  mode: "auto_resolve" | "manual";
  kerf_blade_mm: number;
  placements: Record<string, Placement>;
}

export interface Settings {
  kerf_blade_mm: number;
  resaw_allowed: boolean;
  rotation_snap: boolean;
  scene_collision: boolean;
}

export interface SceneMesh {
  triangles: number[][][];
  tags: string[];
}

export interface DocumentState {
  version: string;
  settings: Settings;
  scraps: Record<string, Scrap>;
  parts: Record<string, Part>;
  plans: Record<string, CutPlan>;
  link_groups: Record<string, { id: number; members: number[] }>;
  scene_mesh: SceneMesh | null;
  next_scrap_id: number;
  next_part_id: number;
  next_group_id: number;
}

export interface Violation {
  kind: "OutOfBounds" | "Overlap2D" | "ResawViolation" | "InvalidGeometry";
  part_ids: number[];
  detail: string;
  scrap_id: number | null;
}

// Entity-level patch attached to every successful Event.
export interface CollectionDelta<T> {
  added: Record<string, T>;
  removed: string[];
  changed: Record<string, T>;
}

export interface Delta {
  scraps?: CollectionDelta<Scrap>;
  parts?: CollectionDelta<Part>;
  plans?: CollectionDelta<CutPlan>;
  link_groups?: CollectionDelta<{ id: number; members: number[] }>;
  settings?: Settings;
  scene_mesh?: SceneMesh | null;
}

export interface EventMsg {
  type?: "event";
  seq: number | null;            // null on rejected commands
  name: string;
  error: { type: string; message: string } | null;
  result: Record<string, unknown> | null;
  delta: Delta;
  violations: Violation[];
}

export interface SnapshotMsg {
  type: "snapshot";
  seq: number;
  document: DocumentState;
  violations: Violation[];
}

export interface DesignCommand {
  name: string;
  args?: Record<string, unknown>;
}

export interface UsageReport {
  per_scrap: Record<string, number>;
  totals: Record<string, number>;
  overall: number;
}
