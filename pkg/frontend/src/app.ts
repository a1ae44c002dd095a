// The design app: wires the protocol client, the session store, and the
// view state into a DOM tree.  Rendering is a full rebuild per change —
// documents are tens of parts, so there is nothing worth diffing.

import { SessionClient } from "./client";
import {
  bodyDropGesture,
  faceDragGesture,
  planDragGesture,
  spawnGesture,
} from "./gestures";
import type { DesignCommand, EventMsg, Pose } from "./protocol";
import { buildRenderModel, type RenderModel } from "./render";
import { SessionStore } from "./store";
import { ViewState } from "./view";

export class DesignApp {
  store = new SessionStore();
  view = new ViewState();
  lastModel: RenderModel | null = null;
  toasts: string[] = [];

  constructor(
    private root: HTMLElement,
    private client: SessionClient,
  ) {
    this.store.onChange(() => this.render());
  }

  async connect(): Promise<void> {
    await this.client.connect({
      onSnapshot: (snap) => this.store.applySnapshot(snap),
      onEvent: (event) => this.store.applyEvent(event),
    });
  }

  disconnect() {
    this.client.disconnect();
  }

  // -- gestures ------------------------------------------------------------

  async spawn(scrapId?: number, dims?: number[]): Promise<EventMsg> {
    return this.send(spawnGesture(scrapId, dims));
  }

  async faceDrag(partId: number, face: string, deltaMm: number): Promise<EventMsg> {
    // no local solid editing: preview is the command we are about to send,
    // shown as a pending marker until the authoritative Event lands
    return this.send(faceDragGesture(partId, face, deltaMm));
  }

  /** Release a grabbed part: optimistic pose now, server pose on Event. */
  async bodyDrop(
    partId: number,
    translation: number[],
    eulerDeg: number[],
  ): Promise<EventMsg> {
    this.store.setPreview(partId, eulerToPose(translation, eulerDeg));
    const event = await this.send(bodyDropGesture(partId, translation, eulerDeg));
    if (event.error) this.store.dropPreview(partId); // rollback
    return event;
  }

  async planDrag(partId: number, positionMm: number[]): Promise<EventMsg> {
    return this.send(planDragGesture(partId, positionMm));
  }

  async send(command: DesignCommand): Promise<EventMsg> {
    const event = await this.client.postCommand(command);
    if (event.error) this.toast(`${event.error.type}: ${event.error.message}`);
    return event;
  }

  selectPart(partId: number) {
    this.view.select(partId);
    this.render();
  }

  // -- rendering -----------------------------------------------------------

  render() {
    const doc = this.store.doc;
    this.view.prune(doc);
    if (!doc) {
      this.root.innerHTML = '<div class="scene" data-empty="true"></div>';
      return;
    }
    const model = buildRenderModel(
      doc,
      this.store.violations,
      this.view,
      (pid) => this.store.poseOf(pid),
      new Set(this.store.previews.keys()),
    );
    this.lastModel = model;

    const scene = model.sceneParts
      .map((p) => {
        const cls = [
          "part",
          p.red ? "violation" : "",
          p.highlighted ? "highlighted" : "",
          p.preview ? "preview" : "",
        ]
          .filter(Boolean)
          .join(" ");
        const origin = p.worldVertices[0].map((x) => x.toFixed(3)).join(",");
        return `<div class="${cls}" data-part-id="${p.id}" data-origin="${origin}" style="--part-color:${p.color}"></div>`;
      })
      .join("");

    const panels = model.planPanels
      .map((panel) => {
        const cuts = panel.cuts
          .map((c) => {
            const cls = [
              "cut",
              c.red ? "violation" : "",
              c.highlighted ? "highlighted" : "",
            ]
              .filter(Boolean)
              .join(" ");
            const pts = c.polygon.map(([x, y]) => `${x},${y}`).join(" ");
            return `<div class="${cls}" data-part-id="${c.partId}" data-polygon="${pts}"></div>`;
          })
          .join("");
        return `<div class="plan-panel" data-scrap-id="${panel.scrapId}" data-mode="${panel.mode}">${cuts}</div>`;
      })
      .join("");

    const inventory = model.inventory
      .map(
        (e) =>
          `<li class="scrap${e.retired ? " retired" : ""}" data-scrap-id="${e.scrapId}">${e.label} ${e.dims}</li>`,
      )
      .join("");

    const violations = model.violations
      .map((v) => `<li class="violation-row">${v.kind}: parts ${v.part_ids.join(",")}</li>`)
      .join("");

    const toasts = this.toasts
      .map((t) => `<div class="toast">${t}</div>`)
      .join("");

    this.root.innerHTML =
      `<div class="scene">${scene}</div>` +
      `<div class="plans">${panels}</div>` +
      `<ul class="inventory">${inventory}</ul>` +
      `<ul class="violations">${violations}</ul>` +
      `<div class="toasts">${toasts}</div>`;
  }

  toast(message: string) {
    this.toasts.push(message);
    this.render();
  }
}

function eulerToPose(translation: number[], eulerDeg: number[]): Pose {
  // extrinsic xyz rotation, same convention the service uses
  const [rx, ry, rz] = eulerDeg.map((d) => (d * Math.PI) / 180);
  const cx = Math.cos(rx), sx = Math.sin(rx);
  const cy = Math.cos(ry), sy = Math.sin(ry);
  const cz = Math.cos(rz), sz = Math.sin(rz);
  const Rx = [
    [1, 0, 0],
    [0, cx, -sx],
    [0, sx, cx],
  ];
  const Ry = [
    [cy, 0, sy],
    [0, 1, 0],
    [-sy, 0, cy],
  ];
  const Rz = [
    [cz, -sz, 0],
    [sz, cz, 0],
    [0, 0, 1],
  ];
  const mul = (a: number[][], b: number[][]) =>
    a.map((row, i) =>
      row.map((_, j) => a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j]),
    );
  return { translation: [...translation], rotation: mul(Rz, mul(Ry, Rx)) };
}
