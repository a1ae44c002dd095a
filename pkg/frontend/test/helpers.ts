// Shared fixtures: hand-built documents matching the server's wire format.

import type {
  CutPlan,
  DocumentState,
  Part,
  Placement,
  Scrap,
  SnapshotMsg,
  Violation,
} from "../src/protocol";

export function boxVertices(l: number, w: number, t: number): number[][] {
  const out: number[][] = [];
  for (let i = 0; i < 8; i++) {
    out.push([(i & 1) * l, ((i >> 1) & 1) * w, ((i >> 2) & 1) * t]);
  }
  return out;
}

export function makeScrap(id: number, l = 1000, w = 100, t = 20): Scrap {
  return {
    id,
    length_mm: l,
    width_mm: w,
    thickness_mm: t,
    material_kind: "wood",
    tag: null,
    grain: { axis_deg: 0, size: 40, wobble: 0.5, seed: 0 },
    color_rgb: [0.8, 0.7, 0.5],
    retired: false,
  };
}

export function makePart(id: number, source: number | null, dims: [number, number, number]): Part {
  return {
    id,
    source,
    vertices: boxVertices(...dims),
    link_group: null,
    group: null,
    fabricated: false,
    pose: {
      translation: [0, 0, 0],
      rotation: [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
      ],
    },
  };
}

export function makePlacement(partId: number, scrapId: number, x = 0, y = 0): Placement {
  return { part_id: partId, scrap_id: scrapId, position_mm: [x, y], rotation_deg: 0, pinned: false };
}

export function makePlan(scrapId: number, placements: Placement[]): CutPlan {
  const map: Record<string, Placement> = {};
  for (const pl of placements) map[String(pl.part_id)] = pl;
  return { scrap_id: scrapId, mode: "auto_resolve", kerf_blade_mm: 3, placements: map };
}

export function emptyDoc(): DocumentState {
  return {
    version: "1",
    settings: { kerf_blade_mm: 3, resaw_allowed: false, rotation_snap: true, scene_collision: true },
    scraps: {},
    parts: {},
    plans: {},
    link_groups: {},
    scene_mesh: null,
    next_scrap_id: 1,
    next_part_id: 1,
    next_group_id: 1,
  };
}

export function snapshot(seq: number, doc: DocumentState, violations: Violation[] = []): SnapshotMsg {
  return { type: "snapshot", seq, document: doc, violations };
}

export const clone = <T>(x: T): T => JSON.parse(JSON.stringify(x));
