// Gesture-to-command mapping.  Each completed gesture yields exactly one
// DesignCommand; the caller POSTs it and reconciles the Event.

import type { DesignCommand } from "./protocol";

export function spawnGesture(scrapId?: number, dims?: number[]): DesignCommand {
  const args: Record<string, unknown> = {};
  if (scrapId !== undefined) args.scrap_id = scrapId;
  if (dims) args.dims = dims;
  return { name: "spawn_part", args };
}

/** Dragging a face handle by deltaMm along its outward normal. */
export function faceDragGesture(
  partId: number,
  face: string,
  deltaMm: number,
): DesignCommand {
  return {
    name: "push_pull_face",
    args: { part_id: partId, face, delta_mm: deltaMm },
  };
}

/** Dragging an edge handle. */
export function edgeDragGesture(
  partId: number,
  edge: [string, string],
  axisFace: string,
  deltaMm: number,
): DesignCommand {
  return {
    name: "move_edge",
    args: { part_id: partId, edge, axis: axisFace, delta_mm: deltaMm },
  };
}

/** Releasing a grabbed part at a world pose; the server resolves overlap. */
export function bodyDropGesture(
  partId: number,
  translation: number[],
  eulerDeg: number[],
): DesignCommand {
  return {
    name: "propose_move",
    args: { part_id: partId, translation, euler_deg: eulerDeg },
  };
}

/** Dragging a cut on the plan panel. */
export function planDragGesture(partId: number, positionMm: number[]): DesignCommand {
  return { name: "move_cut", args: { part_id: partId, position_mm: positionMm } };
}
