// Client mirror of the server document.  The server is the single source
// of truth: this store only replays snapshots and seq-ordered Events, plus
// short-lived optimistic previews that authoritative Events replace.

import type {
  CollectionDelta,
  Delta,
  DocumentState,
  EventMsg,
  Pose,
  SnapshotMsg,
  Violation,
} from "./protocol";

function applyCollection<T>(target: Record<string, T>, delta?: CollectionDelta<T>) {
  if (!delta) return;
  for (const key of delta.removed) delete target[key];
  Object.assign(target, delta.added, delta.changed);
}

/** FNV-1a over a canonical JSON rendering; stable across store instances. */
function fnv1a(text: string): string {
  let h = 0xcbf29ce484222325n;
  const prime = 0x100000001b3n;
  for (let i = 0; i < text.length; i++) {
    h ^= BigInt(text.charCodeAt(i));
    h = (h * prime) & 0xffffffffffffffffn;
  }
  return h.toString(16).padStart(16, "0");
}

function canonical(value: unknown): string {
  if (value === null || typeof value !== "object") return JSON.stringify(value);
  if (Array.isArray(value)) return `[${value.map(canonical).join(",")}]`;
  const keys = Object.keys(value as object).sort();
  const body = keys
    .map((k) => `${JSON.stringify(k)}:${canonical((value as Record<string, unknown>)[k])}`)
    .join(",");
  return `{${body}}`;
}

export interface PreviewPose {
  partId: number;
  pose: Pose;
}

export class SessionStore {
  doc: DocumentState | null = null;
  violations: Violation[] = [];
  seq = 0;
  /** optimistic 3D poses, keyed by part id, cleared on reconciliation */
  previews = new Map<number, Pose>();
  private pending: EventMsg[] = [];
  private listeners: Array<() => void> = [];

  onChange(fn: () => void) {
    this.listeners.push(fn);
  }

  private emit() {
    for (const fn of this.listeners) fn();
  }

  applySnapshot(snap: SnapshotMsg) {
    this.doc = snap.document;
    this.violations = snap.violations;
    this.seq = snap.seq;
    this.previews.clear();
    this.pending = [];
    this.emit();
  }

  /** Apply an Event; out-of-order arrivals are buffered until their turn. */
  applyEvent(event: EventMsg) {
    if (event.seq === null) {
      // rejected command: nothing changed server-side, drop any preview
      this.previews.clear();
      this.emit();
      return;
    }
    if (event.seq <= this.seq) return; // duplicate delivery
    this.pending.push(event);
    this.pending.sort((a, b) => (a.seq as number) - (b.seq as number));
    while (this.pending.length && this.pending[0].seq === this.seq + 1) {
      const next = this.pending.shift() as EventMsg;
      this.applyDelta(next.delta);
      this.violations = next.violations;
      this.seq = next.seq as number;
      this.reconcile(next);
    }
    this.emit();
  }

  private applyDelta(delta: Delta) {
    const doc = this.doc;
    if (!doc) throw new Error("event before snapshot");
    applyCollection(doc.scraps, delta.scraps);
    applyCollection(doc.parts, delta.parts);
    applyCollection(doc.plans, delta.plans);
    applyCollection(doc.link_groups, delta.link_groups);
    if (delta.settings) doc.settings = delta.settings;
    if ("scene_mesh" in delta) doc.scene_mesh = delta.scene_mesh ?? null;
  }

  /** Authoritative state replaces any optimistic preview it covers. */
  private reconcile(event: EventMsg) {
    if (!event.delta.parts) return;
    for (const key of Object.keys(event.delta.parts.changed)) {
      this.previews.delete(Number(key));
    }
    for (const key of Object.keys(event.delta.parts.added)) {
      this.previews.delete(Number(key));
    }
  }

  setPreview(partId: number, pose: Pose) {
    this.previews.set(partId, pose);
    this.emit();
  }

  dropPreview(partId: number) {
    this.previews.delete(partId);
    this.emit();
  }

  /** Effective pose for rendering: preview wins until reconciled. */
  poseOf(partId: number): Pose | null {
    const preview = this.previews.get(partId);
    if (preview) return preview;
    return this.doc?.parts[String(partId)]?.pose ?? null;
  }

  violatingPartIds(): Set<number> {
    const ids = new Set<number>();
    for (const v of this.violations) for (const pid of v.part_ids) ids.add(pid);
    return ids;
  }

  /**
   * Digest of everything the scene renders from.  Two stores showing the
   * same design — one fed by a snapshot, one by the full event stream —
   * must agree on this.
   */
  sceneDigest(): string {
    if (!this.doc) return fnv1a("empty");
    const payload = {
      parts: this.doc.parts,
      plans: this.doc.plans,
      scraps: this.doc.scraps,
      scene_mesh: this.doc.scene_mesh,
      violations: this.violations,
    };
    return fnv1a(canonical(payload));
  }
}
