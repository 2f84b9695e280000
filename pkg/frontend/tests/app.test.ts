import { describe, expect, it } from "vitest";

import { App } from "../src/app.js";
import { EngineConnection } from "../src/protocol.js";
import { buildScene } from "../src/render.js";
import { FakeTransport, loadFixture } from "./helpers.js";

describe("App command flow", () => {
  it("runs a scripted gesture session emitting exactly the expected commands", async () => {
    const transport = new FakeTransport();
    const app = new App(new EngineConnection(transport));
    const doc = loadFixture();

    const p1 = app.load("graph [ node [ id 1 ] ]");
    transport.reply({ event: "state", document: doc });
    await p1;
    expect(app.vm.document).not.toBeNull();

    // rectangle gesture -> select_cluster
    const p2 = app.rectangleSelect(-210, -10, -190, 10);
    transport.reply({ event: "state", document: doc });
    await p2;

    // click on the expanded diagram -> collapse
    const p3 = app.clickAt(0, 5);
    transport.reply({ event: "state", document: doc });
    await p3;

    // click on the collapsed cluster-node -> expand
    const c1 = doc.clusters.find((c) => c.id === "c1")!;
    const p4 = app.clickAt(c1.center[0], c1.center[1]);
    transport.reply({ event: "state", document: doc });
    await p4;

    // drag a free node into the expanded cluster -> add_node_to_cluster
    const p5 = app.dragDrop("f1", 0, 5);
    transport.reply({ event: "state", document: doc });
    await p5;

    expect(transport.sentFrames).toEqual([
      { cmd: "load", gml: "graph [ node [ id 1 ] ]" },
      { cmd: "select_cluster", nodes: ["u1"] },
      { cmd: "collapse", cluster_id: "c0" },
      { cmd: "expand", cluster_id: "c1" },
      { cmd: "add_node_to_cluster", cluster_id: "c0", node: "f1" },
    ]);
  });

  it("empty selection sends nothing", async () => {
    const transport = new FakeTransport();
    const app = new App(new EngineConnection(transport));
    const p = app.load("g");
    transport.reply({ event: "state", document: loadFixture() });
    await p;
    await app.rectangleSelect(1000, 1000, 1001, 1001);
    expect(transport.sentFrames).toHaveLength(1); // only the load
  });

  it("scene changes only when an engine event arrives", async () => {
    const transport = new FakeTransport();
    const app = new App(new EngineConnection(transport));
    const p = app.load("g");
    transport.reply({ event: "state", document: loadFixture() });
    await p;
    const before = JSON.stringify(buildScene(app.vm));

    const pending = app.clickAt(0, 5); // collapse sent, not yet confirmed
    expect(JSON.stringify(buildScene(app.vm))).toBe(before);

    const collapsed = loadFixture();
    collapsed.clusters.find((c) => c.id === "c0")!.collapsed = true;
    transport.reply({ event: "state", document: collapsed });
    await pending;
    const after = buildScene(app.vm);
    expect(after.filter((s) => s.kind === "cluster-node")).toHaveLength(2);
    expect(after.filter((s) => s.kind === "arc")).toHaveLength(0);
  });

  it("error events surface without clobbering the document", async () => {
    const transport = new FakeTransport();
    const app = new App(new EngineConnection(transport));
    const p1 = app.load("g");
    transport.reply({ event: "state", document: loadFixture() });
    await p1;
    const p2 = app.clickAt(0, 5);
    transport.reply({ event: "error", message: "already collapsed" });
    await p2;
    expect(app.vm.lastError).toBe("already collapsed");
    expect(app.vm.document?.clusters).toHaveLength(2);
  });
});
