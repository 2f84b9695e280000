/** End-to-end test against the real engine over its TCP serve port. */

import { spawn, spawnSync, type ChildProcess } from "node:child_process";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { App } from "../src/app.js";
import { TcpTransport } from "../src/node-transport.js";
import { EngineConnection } from "../src/protocol.js";
import { buildScene } from "../src/render.js";

const repoRoot = join(dirname(fileURLToPath(import.meta.url)), "..", "..");

const GML = `graph [
  node [ id 1 ] node [ id 2 ] node [ id 3 ] node [ id 4 ] node [ id 5 ]
  edge [ source 1 target 2 ] edge [ source 2 target 3 ] edge [ source 1 target 3 ]
  edge [ source 3 target 4 ] edge [ source 4 target 5 ]
]`;

const pythonOk = spawnSync("python3", ["-c", "import chordlink"], { cwd: repoRoot }).status === 0;

describe.skipIf(!pythonOk)("engine integration", () => {
  let proc: ChildProcess;
  let app: App;
  let conn: EngineConnection;

  beforeAll(async () => {
    proc = spawn("python3", ["-m", "chordlink.cli", "serve", "--port", "0"], {
      cwd: repoRoot,
      stdio: ["ignore", "pipe", "pipe"],
    });
    const port = await new Promise<number>((resolve, reject) => {
      const timer = setTimeout(() => reject(new Error("engine did not start")), 20000);
      proc.stdout!.on("data", (chunk: Buffer) => {
        const m = /listening on [\d.]+:(\d+)/.exec(chunk.toString());
        if (m) {
          clearTimeout(timer);
          resolve(Number(m[1]));
        }
      });
      proc.on("exit", (code) => reject(new Error(`engine exited early (${code})`)));
    });
    conn = new EngineConnection(await TcpTransport.connect(port));
    app = new App(conn);
  }, 30000);

  afterAll(async () => {
    try {
      await app?.shutdown();
    } finally {
      conn?.close();
      proc?.kill();
    }
  });

  it("drives a full session through the protocol", async () => {
    const loaded = await app.load(GML);
    expect(loaded).toMatchObject({ event: "state" });

    await app.runLayout(7, 150);
    const positions = app.vm.document!.positions;
    expect(Object.keys(positions)).toHaveLength(5);

    // rectangle around the triangle 1,2,3 computed from real positions
    const xs = ["1", "2", "3"].map((n) => positions[n][0]);
    const ys = ["1", "2", "3"].map((n) => positions[n][1]);
    const pad = 1.0;
    const ev = await app.rectangleSelect(
      Math.min(...xs) - pad, Math.min(...ys) - pad,
      Math.max(...xs) + pad, Math.max(...ys) + pad,
    );
    expect(ev).toMatchObject({ event: "state" });
    const cluster = app.vm.document!.clusters[0];
    expect(cluster.members).toEqual(["1", "2", "3"]);
    expect(cluster.chords).toHaveLength(3);

    // collapse by clicking inside the diagram, then expand via the glyph
    const sceneBefore = JSON.stringify(buildScene(app.vm));
    await app.clickAt(cluster.center[0], cluster.center[1]);
    expect(app.vm.document!.clusters[0].collapsed).toBe(true);
    await app.clickAt(cluster.center[0], cluster.center[1]);
    expect(app.vm.document!.clusters[0].collapsed).toBe(false);
    expect(JSON.stringify(buildScene(app.vm))).toBe(sceneBefore);

    // drop node 4 into the cluster
    const ev2 = await app.dragDrop("4", cluster.center[0], cluster.center[1]);
    expect(ev2).toMatchObject({ event: "state" });
    expect(app.vm.document!.clusters[0].members).toContain("4");
    expect(app.vm.document!.positions["4"]).toBeUndefined();
  }, 30000);
});
