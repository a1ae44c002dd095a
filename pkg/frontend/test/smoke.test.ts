// @vitest-environment jsdom
//
// End-to-end smoke test against the real design service: spawn a part,
// drag a face, drop a part into another, and watch the server-resolved
// pose and red-violation rendering arrive over the live channel.

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import WebSocket from "ws";

import { DesignApp } from "../src/app";
import { SessionClient, type WebSocketCtor } from "../src/client";
import { highlightBijectionHolds } from "../src/render";

const PORT = 8471;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitFor(cond: () => boolean, ms = 10_000): Promise<void> {
  const start = Date.now();
  while (!cond()) {
    if (Date.now() - start > ms) throw new Error("timed out waiting");
    await new Promise((r) => setTimeout(r, 20));
  }
}

function newApp(): DesignApp {
  const root = document.createElement("div");
  document.body.appendChild(root);
  const client = new SessionClient(BASE, WebSocket as unknown as WebSocketCtor);
  return new DesignApp(root, client);
}

function rootOf(app: DesignApp): HTMLElement {
  return (app as unknown as { root: HTMLElement })["root"];
}

beforeAll(async () => {
  server = spawn("python3", ["-m", "scrapcad.cli", "serve", "--port", String(PORT)], {
    stdio: "ignore",
  });
  const start = Date.now();
  for (;;) {
    try {
      const res = await fetch(`${BASE}/inventory`);
      if (res.ok) break;
    } catch {
      /* not up yet */
    }
    if (Date.now() - start > 20_000) throw new Error("server did not start");
    await new Promise((r) => setTimeout(r, 100));
  }
});

afterAll(() => {
  server?.kill();
});

describe("scripted browser session", () => {
  it("spawn → face-drag → overlap-drop → violations → reconnect", async () => {
    const app = newApp();
    await app.connect();
    await waitFor(() => app.store.doc !== null);

    // --- spawn: a scrap and a part appear in the scene and the plan panel
    await app.send({
      name: "register_scrap",
      args: { length_mm: 300, width_mm: 300, thickness_mm: 20 },
    });
    const spawned = await app.spawn(undefined, [100, 100, 20]);
    expect(spawned.error).toBeNull();
    await app.send({ name: "reassign", args: { part_id: 1, scrap_id: 1 } });
    await waitFor(() => app.store.seq >= 3);
    const root = rootOf(app);
    expect(root.querySelector('.part[data-part-id="1"]')).toBeTruthy();
    expect(root.querySelector('.cut[data-part-id="1"]')).toBeTruthy();
    app.selectPart(1);
    expect(highlightBijectionHolds(app.lastModel!)).toBe(true);

    // --- face-drag: one push_pull_face command, authoritative result lands
    const drag = await app.faceDrag(1, "+x", -40);
    expect(drag.error).toBeNull();
    await waitFor(() => app.store.seq >= (drag.seq as number));
    const verts = app.store.doc!.parts["1"].vertices;
    const xExtent = Math.max(...verts.map((v) => v[0]));
    expect(xExtent).toBe(60);
    expect(highlightBijectionHolds(app.lastModel!)).toBe(true);

    // --- overlap-drop: optimistic preview first, server-resolved pose after
    await app.spawn(undefined, [100, 100, 20]);
    await waitFor(() => app.store.doc!.parts["2"] !== undefined);
    const dropPromise = app.bodyDrop(2, [50, 0, 0], [0, 0, 0]); // into part 1
    expect(root.querySelector(".part.preview")).toBeTruthy(); // optimistic
    const drop = await dropPromise;
    expect(drop.error).toBeNull();
    await waitFor(() => app.store.seq >= (drop.seq as number));
    const resolved = (drop.result as { pose: { translation: number[] } }).pose;
    expect(resolved.translation[0]).toBeCloseTo(60, 6); // flush, not 30
    expect(app.store.poseOf(2)!.translation).toEqual(resolved.translation);
    expect(root.querySelector(".part.preview")).toBeNull(); // reconciled
    expect(highlightBijectionHolds(app.lastModel!)).toBe(true);

    // --- overlap on the plan: red in both the 2D panel and the 3D scene
    await app.send({ name: "reassign", args: { part_id: 2, scrap_id: 1 } });
    await app.send({ name: "set_plan_mode", args: { scrap_id: 1, mode: "manual" } });
    const shove = await app.planDrag(2, [10, 10]);
    expect(shove.error).toBeNull();
    await waitFor(() => app.store.seq >= (shove.seq as number));
    expect(app.store.violations.some((v) => v.kind === "Overlap2D")).toBe(true);
    expect(root.querySelector('.cut.violation[data-part-id="1"]')).toBeTruthy();
    expect(root.querySelector('.cut.violation[data-part-id="2"]')).toBeTruthy();
    expect(root.querySelector('.part.violation[data-part-id="1"]')).toBeTruthy();
    expect(root.querySelector('.part.violation[data-part-id="2"]')).toBeTruthy();
    expect(root.querySelectorAll(".violations .violation-row").length).toBeGreaterThan(0);
    app.selectPart(2);
    expect(highlightBijectionHolds(app.lastModel!)).toBe(true);

    // --- reconnect: a fresh client renders the identical scene digest
    const digestBefore = app.store.sceneDigest();
    const seqBefore = app.store.seq;
    app.disconnect();
    const fresh = newApp();
    await fresh.connect();
    await waitFor(() => fresh.store.doc !== null && fresh.store.seq === seqBefore);
    expect(fresh.store.sceneDigest()).toBe(digestBefore);
    fresh.disconnect();
  });

  it("rejected command rolls the preview back and toasts", async () => {
    const app = newApp();
    await app.connect();
    await waitFor(() => app.store.doc !== null);
    const event = await app.bodyDrop(999, [0, 0, 0], [0, 0, 0]); // no such part
    expect(event.error?.type).toBe("UnknownPart");
    expect(app.store.previews.size).toBe(0);
    expect(rootOf(app).querySelector(".toast")?.textContent).toContain("UnknownPart");
    app.disconnect();
  });
});
