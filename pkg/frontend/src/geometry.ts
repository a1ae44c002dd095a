// Small geometry helpers for rendering: footprints, quarter-turn plan
// rotations, world-space corners.  The server owns all authoritative
// geometry; these only reproduce what a canvas needs to draw.

import type { Part, Placement, Pose } from "./protocol";

export type Vec2 = [number, number];

/** Convex hull (monotone chain, CCW) of the part's local xy corners. */
export function footprint(vertices: number[][]): Vec2[] {
  const pts = vertices
    .map((v): Vec2 => [v[0], v[1]])
    .sort((a, b) => a[0] - b[0] || a[1] - b[1]);
  const dedup: Vec2[] = [];
  for (const p of pts) {
    const last = dedup[dedup.length - 1];
    if (!last || Math.abs(last[0] - p[0]) > 1e-12 || Math.abs(last[1] - p[1]) > 1e-12) {
      dedup.push(p);
    }
  }
  if (dedup.length <= 2) return dedup;
  const cross = (o: Vec2, a: Vec2, b: Vec2) =>
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  const lower: Vec2[] = [];
  for (const p of dedup) {
    while (lower.length >= 2 && cross(lower[lower.length - 2], lower[lower.length - 1], p) <= 0)
      lower.pop();
    lower.push(p);
  }
  const upper: Vec2[] = [];
  for (const p of [...dedup].reverse()) {
    while (upper.length >= 2 && cross(upper[upper.length - 2], upper[upper.length - 1], p) <= 0)
      upper.pop();
    upper.push(p);
  }
  return lower.slice(0, -1).concat(upper.slice(0, -1));
}

export function rotateQuarter(poly: Vec2[], deg: number): Vec2[] {
  const turns = ((deg / 90) % 4 + 4) % 4;
  let out = poly;
  for (let i = 0; i < turns; i++) out = out.map(([x, y]) => [-y, x]);
  return out;
}

export function bbox(poly: Vec2[]): { lo: Vec2; hi: Vec2 } {
  const xs = poly.map((p) => p[0]);
  const ys = poly.map((p) => p[1]);
  return {
    lo: [Math.min(...xs), Math.min(...ys)],
    hi: [Math.max(...xs), Math.max(...ys)],
  };
}

/** Footprint as drawn on the plan: rotated, anchored at position_mm. */
export function placedFootprint(part: Part, placement: Placement): Vec2[] {
  const rotated = rotateQuarter(footprint(part.vertices), placement.rotation_deg);
  const { lo } = bbox(rotated);
  const [px, py] = placement.position_mm;
  return rotated.map(([x, y]) => [x - lo[0] + px, y - lo[1] + py]);
}

/** Axis-aligned outward dilation by half the blade on each side. */
export function kerfDilate(poly: Vec2[], bladeMm: number): Vec2[] {
  if (bladeMm <= 0 || poly.length < 3) return poly;
  const r = bladeMm / 2;
  const cx = poly.reduce((s, p) => s + p[0], 0) / poly.length;
  const cy = poly.reduce((s, p) => s + p[1], 0) / poly.length;
  // mitered offset of a convex polygon: shift each edge outward, intersect
  const n = poly.length;
  const out: Vec2[] = [];
  for (let i = 0; i < n; i++) {
    const prev = poly[(i - 1 + n) % n];
    const cur = poly[i];
    const next = poly[(i + 1) % n];
    const off = (a: Vec2, b: Vec2): [Vec2, Vec2] => {
      let nx = b[1] - a[1];
      let ny = a[0] - b[0];
      const len = Math.hypot(nx, ny);
      nx /= len;
      ny /= len;
      if ((a[0] - cx) * nx + (a[1] - cy) * ny < 0) {
        nx = -nx;
        ny = -ny;
      }
      return [
        [a[0] + r * nx, a[1] + r * ny],
        [b[0] + r * nx, b[1] + r * ny],
      ];
    };
    const [a1, a2] = off(prev, cur);
    const [b1, b2] = off(cur, next);
    // line intersection of the two shifted edges
    const d1: Vec2 = [a2[0] - a1[0], a2[1] - a1[1]];
    const d2: Vec2 = [b2[0] - b1[0], b2[1] - b1[1]];
    const denom = d1[0] * d2[1] - d1[1] * d2[0];
    if (Math.abs(denom) < 1e-12) {
      out.push(a2);
      continue;
    }
    const t = ((b1[0] - a1[0]) * d2[1] - (b1[1] - a1[1]) * d2[0]) / denom;
    out.push([a1[0] + t * d1[0], a1[1] + t * d1[1]]);
  }
  return out;
}

export function applyPose(pose: Pose, vertices: number[][]): number[][] {
  const R = pose.rotation;
  const t = pose.translation;
  return vertices.map((v) => [
    R[0][0] * v[0] + R[0][1] * v[1] + R[0][2] * v[2] + t[0],
    R[1][0] * v[0] + R[1][1] * v[1] + R[1][2] * v[2] + t[1],
    R[2][0] * v[0] + R[2][1] * v[1] + R[2][2] * v[2] + t[2],
  ]);
}

/**
 * Direction grain strokes run on the plan for a part, folded into [0, 90].
 * 0 = along the part's long axis; rotation of the placement counts.
 */
export function grainStrokeDeg(
  grainAxisDeg: number,
  placementRotationDeg: number,
  longAxisDeg: number,
): number {
  const raw = (((grainAxisDeg - placementRotationDeg - longAxisDeg) % 180) + 180) % 180;
  return raw > 90 ? 180 - raw : raw;
}

export function longAxisDeg(part: Part): number {
  const { lo, hi } = bbox(footprint(part.vertices));
  return hi[0] - lo[0] >= hi[1] - lo[1] ? 0 : 90;
}
