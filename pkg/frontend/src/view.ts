// UI-local state.  Selection is the single source for highlighting: the
// plan-panel highlight set is always derived from the same part ids as
// the 3D highlight set, so the two can never disagree.

import type { DocumentState } from "./protocol";

export type Tool = "grab" | "face" | "edge" | "plan";

export interface Selection {
  partId: number;
  face?: string;                  // "+x" … "-z"
  edge?: [string, string];
}

export class ViewState {
  tool: Tool = "grab";
  selection: Selection | null = null;
  panels = { inventory: true, plan: true, violations: true };

  select(partId: number, extra: Partial<Selection> = {}) {
    this.selection = { partId, ...extra };
  }

  clearSelection() {
    this.selection = null;
  }

  /** Drop a selection that no longer points at an existing part. */
  prune(doc: DocumentState | null) {
    if (!this.selection) return;
    if (!doc || !(String(this.selection.partId) in doc.parts)) {
      this.selection = null;
    }
  }

  /** Part ids highlighted in the 3D scene. */
  sceneHighlights(): Set<number> {
    return this.selection ? new Set([this.selection.partId]) : new Set();
  }

  /** Part ids highlighted on the cut-plan panels — same set by design. */
  planHighlights(): Set<number> {
    return this.sceneHighlights();
  }
}
