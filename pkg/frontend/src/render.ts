// Pure render-model builder: document + violations + view state in, plain
// drawable records out.  Violating parts come back red in both the 3D
// scene records and the plan-panel records.

import {
  applyPose,
  grainStrokeDeg,
  kerfDilate,
  longAxisDeg,
  placedFootprint,
  type Vec2,
} from "./geometry";
import type { DocumentState, Pose, Violation } from "./protocol";
import type { ViewState } from "./view";

export interface ScenePartModel {
  id: number;
  worldVertices: number[][];
  color: string;                 // scrap color or "red"
  red: boolean;
  highlighted: boolean;
  preview: boolean;              // drawn from an optimistic pose
  grainStrokeDeg: number | null; // null for unassigned parts
}

export interface PlanCutModel {
  partId: number;
  polygon: Vec2[];
  kerfOutline: Vec2[];
  red: boolean;
  highlighted: boolean;
  pinned: boolean;
}

export interface PlanPanelModel {
  scrapId: number;
  widthMm: number;
  heightMm: number;
  mode: string;
  cuts: PlanCutModel[];
}

export interface InventoryEntryModel {
  scrapId: number;
  label: string;
  dims: string;
  retired: boolean;
}

export interface RenderModel {
  sceneParts: ScenePartModel[];
  planPanels: PlanPanelModel[];
  inventory: InventoryEntryModel[];
  sceneTriangles: number[][][];
  violations: Violation[];
}

function rgbCss(rgb: number[]): string {
  const [r, g, b] = rgb.map((x) => Math.round(x * 255));
  return `rgb(${r},${g},${b})`;
}

export function buildRenderModel(
  doc: DocumentState,
  violations: Violation[],
  view: ViewState,
  poseOf: (partId: number) => Pose | null,
  previews: Set<number>,
): RenderModel {
  const redIds = new Set<number>();
  for (const v of violations) for (const pid of v.part_ids) redIds.add(pid);
  const highlighted3d = view.sceneHighlights();
  const highlightedPlan = view.planHighlights();

  const placementOf = (partId: number) => {
    for (const plan of Object.values(doc.plans)) {
      const pl = plan.placements[String(partId)];
      if (pl) return pl;
    }
    return null;
  };

  const sceneParts: ScenePartModel[] = Object.values(doc.parts).map((part) => {
    const pose = poseOf(part.id) ?? part.pose;
    const scrap = part.source !== null ? doc.scraps[String(part.source)] : null;
    const placement = placementOf(part.id);
    const red = redIds.has(part.id);
    return {
      id: part.id,
      worldVertices: applyPose(pose, part.vertices),
      color: red ? "red" : scrap ? rgbCss(scrap.color_rgb) : "rgb(128,128,128)",
      red,
      highlighted: highlighted3d.has(part.id),
      preview: previews.has(part.id),
      grainStrokeDeg:
        scrap && placement
          ? grainStrokeDeg(scrap.grain.axis_deg, placement.rotation_deg, longAxisDeg(part))
          : null,
    };
  });

  const planPanels: PlanPanelModel[] = Object.values(doc.plans).map((plan) => {
    const scrap = doc.scraps[String(plan.scrap_id)];
    const cuts: PlanCutModel[] = Object.values(plan.placements).map((pl) => {
      const part = doc.parts[String(pl.part_id)];
      const polygon = placedFootprint(part, pl);
      return {
        partId: pl.part_id,
        polygon,
        kerfOutline: kerfDilate(polygon, plan.kerf_blade_mm),
        red: redIds.has(pl.part_id),
        highlighted: highlightedPlan.has(pl.part_id),
        pinned: pl.pinned,
      };
    });
    return {
      scrapId: plan.scrap_id,
      widthMm: scrap.length_mm,
      heightMm: scrap.width_mm,
      mode: plan.mode,
      cuts,
    };
  });

  const inventory: InventoryEntryModel[] = Object.values(doc.scraps).map((s) => ({
    scrapId: s.id,
    label: s.tag ?? s.material_kind,
    dims: `${s.length_mm}×${s.width_mm}×${s.thickness_mm} mm`,
    retired: s.retired,
  }));

  return {
    sceneParts,
    planPanels,
    inventory,
    sceneTriangles: doc.scene_mesh?.triangles ?? [],
    violations,
  };
}

/** Invariant check used by tests and debug builds. */
export function highlightBijectionHolds(model: RenderModel): boolean {
  const scene = new Set(model.sceneParts.filter((p) => p.highlighted).map((p) => p.id));
  const placed = new Set(
    model.planPanels.flatMap((panel) => panel.cuts.map((c) => c.partId)),
  );
  const plan = new Set(
    model.planPanels.flatMap((panel) =>
      panel.cuts.filter((c) => c.highlighted).map((c) => c.partId),
    ),
  );
  // every highlighted placed part appears in both sets; never only in one
  for (const id of plan) if (!scene.has(id)) return false;
  for (const id of scene) if (placed.has(id) && !plan.has(id)) return false;
  return true;
}
