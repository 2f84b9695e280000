/** Browser entry: connects to the engine through the WebSocket bridge and
 * wires pointer gestures to protocol commands. All geometry comes from
 * engine events; this file only routes input and redraws. */

import { App } from "./app.js";
import { EngineConnection, type Transport } from "./protocol.js";
import { buildScene, sceneToSvg } from "./render.js";
import type { HoverTarget } from "./viewmodel.js";

class WebSocketTransport implements Transport {
  private handlers: ((chunk: Uint8Array) => void)[] = [];

  constructor(private ws: WebSocket) {
    ws.binaryType = "arraybuffer";
    ws.onmessage = (ev) => {
      const chunk = new Uint8Array(ev.data as ArrayBuffer);
      for (const h of this.handlers) h(chunk);
    };
  }

  send(data: Uint8Array): void {
    this.ws.send(data);
  }

  onData(cb: (chunk: Uint8Array) => void): void {
    this.handlers.push(cb);
  }

  close(): void {
    this.ws.close();
  }
}

type DragState =
  | { kind: "select"; x0: number; y0: number; x1: number; y1: number; lasso: [number, number][] }
  | { kind: "node"; node: string }
  | { kind: "pan"; lastX: number; lastY: number }
  | null;

function setup() {
  const svg = document.getElementById("view") as unknown as SVGSVGElement;
  const sceneGroup = document.getElementById("scene-root")!;
  const tooltipBox = document.getElementById("tooltip")!;
  const statusBox = document.getElementById("status")!;
  const fileInput = document.getElementById("gml-file") as HTMLInputElement;

  const ws = new WebSocket(`ws://${location.hostname}:8765`);
  const app = new App(new EngineConnection(new WebSocketTransport(ws)));

  const redraw = () => {
    const { scale, tx, ty } = app.vm.viewport;
    sceneGroup.setAttribute("transform", `translate(${tx}, ${ty}) scale(${scale})`);
    sceneGroup.innerHTML = sceneToSvg(buildScene(app.vm));
    statusBox.textContent = app.vm.lastError ?? "";
  };
  app.onChange = redraw;

  const toWorld = (ev: MouseEvent): [number, number] => {
    const rect = svg.getBoundingClientRect();
    const { scale, tx, ty } = app.vm.viewport;
    return [(ev.clientX - rect.left - tx) / scale, (ev.clientY - rect.top - ty) / scale];
  };

  const hoverTargetAt = (x: number, y: number): HoverTarget => {
    const vm = app.vm;
    const node = vm.freeNodeAt(x, y);
    if (node) return { kind: "node", node };
    const glyph = vm.clusterNodeAt(x, y);
    if (glyph) return { kind: "cluster-node", clusterId: glyph.id };
    const open = vm.clusterAt(x, y);
    if (open) {
      const [cx, cy] = open.center;
      const d = Math.hypot(x - cx, y - cy);
      if (Math.abs(d - open.radius) < 8) {
        const angle = (Math.atan2(y - cy, x - cx) + 2 * Math.PI) % (2 * Math.PI);
        const idx = open.arcs.findIndex((a) => {
          const rel = (angle - a.start_angle + 2 * Math.PI) % (2 * Math.PI);
          return rel <= a.end_angle - a.start_angle;
        });
        if (idx >= 0) {
          return { kind: "arc", clusterId: open.id, arcIndex: idx, node: open.arcs[idx].node };
        }
      }
    }
    return null;
  };

  let drag: DragState = null;
  let moved = false;

  svg.addEventListener("mousedown", (ev) => {
    const [x, y] = toWorld(ev);
    moved = false;
    if (ev.shiftKey) {
      drag = { kind: "select", x0: x, y0: y, x1: x, y1: y, lasso: [[x, y]] };
    } else {
      const node = app.vm.freeNodeAt(x, y);
      drag = node ? { kind: "node", node } : { kind: "pan", lastX: ev.clientX, lastY: ev.clientY };
    }
  });

  svg.addEventListener("mousemove", (ev) => {
    const [x, y] = toWorld(ev);
    if (drag) {
      moved = true;
      if (drag.kind === "select") {
        drag.x1 = x;
        drag.y1 = y;
        drag.lasso.push([x, y]);
      } else if (drag.kind === "pan") {
        app.vm.pan(ev.clientX - drag.lastX, ev.clientY - drag.lastY);
        drag.lastX = ev.clientX;
        drag.lastY = ev.clientY;
        redraw();
      }
      return;
    }
    app.vm.setHover(hoverTargetAt(x, y));
    const tip = app.vm.tooltip();
    tooltipBox.textContent = tip ?? "";
    tooltipBox.style.display = tip ? "block" : "none";
    tooltipBox.style.left = `${ev.clientX + 12}px`;
    tooltipBox.style.top = `${ev.clientY + 12}px`;
    redraw();
  });

  svg.addEventListener("mouseup", async (ev) => {
    const [x, y] = toWorld(ev);
    const d = drag;
    drag = null;
    if (!d) return;
    if (d.kind === "select") {
      if (ev.altKey) await app.lassoSelect(d.lasso);
      else await app.rectangleSelect(d.x0, d.y0, d.x1, d.y1);
    } else if (d.kind === "node" && moved) {
      await app.dragDrop(d.node, x, y);
    } else if (!moved) {
      await app.clickAt(x, y);
    }
  });

  svg.addEventListener("wheel", (ev) => {
    ev.preventDefault();
    const rect = svg.getBoundingClientRect();
    app.vm.zoomAround(Math.exp(-ev.deltaY / 400), ev.clientX - rect.left, ev.clientY - rect.top);
    redraw();
  });

  fileInput.addEventListener("change", async () => {
    const file = fileInput.files?.[0];
    if (!file) return;
    const text = await file.text();
    await app.load(text);
    await app.runLayout();
  });

  document.getElementById("labels-all")!.addEventListener("click", () => app.setLabelPolicy("all"));
  document.getElementById("labels-none")!.addEventListener("click", () => app.setLabelPolicy("none"));
  document.getElementById("labels-auto")!.addEventListener("click", () => app.setLabelPolicy("auto"));
}

if (document.readyState === "complete") setup();
else window.addEventListener("load", setup);
