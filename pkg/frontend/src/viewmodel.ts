/** View model: the engine is the single source of truth. The view model
 * keeps the last received state event, the viewport transform, hover state
 * and the selection-in-progress; gestures translate to protocol commands
 * and never touch layout geometry locally. */

import type { ClusterDoc, Command, EngineEvent, LayoutDocument } from "./types.js";
import { clusterNodeRadius, NODE_RADIUS } from "./types.js";

export interface Viewport {
  scale: number;
  tx: number;
  ty: number;
}

export type HoverTarget =
  | { kind: "node"; node: string }
  | { kind: "edge"; edgeId: number }
  | { kind: "arc"; clusterId: string; arcIndex: number; node: string }
  | { kind: "cluster-node"; clusterId: string }
  | null;

export type SelectionShape =
  | { kind: "rectangle"; x0: number; y0: number; x1: number; y1: number }
  | { kind: "lasso"; points: [number, number][] }
  | null;

export interface Highlight {
  nodes: Set<string>;
  edgeIds: Set<number>;
  arcs: Set<string>; // "clusterId:arcIndex"
}

export class ViewModel {
  document: LayoutDocument | null = null;
  lastError: string | null = null;
  viewport: Viewport = { scale: 1, tx: 0, ty: 0 };
  hover: HoverTarget = null;
  selectionInProgress: SelectionShape = null;

  /** Apply an engine event; the only way state enters the view model. */
  applyEvent(ev: EngineEvent): void {
    if (ev.event === "state") {
      this.document = ev.document;
      this.lastError = null;
    } else if (ev.event === "error") {
      this.lastError = ev.message;
    }
  }

  // -- document lookups -----------------------------------------------------

  cluster(id: string): ClusterDoc | undefined {
    return this.document?.clusters.find((c) => c.id === id);
  }

  freeNodesInRectangle(x0: number, y0: number, x1: number, y1: number): string[] {
    if (!this.document) return [];
    const [lox, hix] = [Math.min(x0, x1), Math.max(x0, x1)];
    const [loy, hiy] = [Math.min(y0, y1), Math.max(y0, y1)];
    return Object.entries(this.document.positions)
      .filter(([, [x, y]]) => x >= lox && x <= hix && y >= loy && y <= hiy)
      .map(([id]) => id)
      .sort();
  }

  freeNodesInLasso(points: [number, number][]): string[] {
    if (!this.document || points.length < 3) return [];
    return Object.entries(this.document.positions)
      .filter(([, [x, y]]) => pointInPolygon(x, y, points))
      .map(([id]) => id)
      .sort();
  }

  /** Expanded cluster whose region disk contains the point, if any. */
  clusterAt(x: number, y: number): ClusterDoc | undefined {
    if (!this.document) return undefined;
    return this.document.clusters.find((c) => {
      if (c.collapsed) return false;
      const [cx, cy] = c.center;
      return Math.hypot(x - cx, y - cy) <= c.radius;
    });
  }

  /** Collapsed cluster whose glyph contains the point, if any. */
  clusterNodeAt(x: number, y: number): ClusterDoc | undefined {
    if (!this.document) return undefined;
    return this.document.clusters.find((c) => {
      if (!c.collapsed) return false;
      const [cx, cy] = c.center;
      return Math.hypot(x - cx, y - cy) <= clusterNodeRadius(c.members.length);
    });
  }

  freeNodeAt(x: number, y: number): string | undefined {
    if (!this.document) return undefined;
    for (const [id, [nx, ny]] of Object.entries(this.document.positions)) {
      if (Math.hypot(x - nx, y - ny) <= NODE_RADIUS) return id;
    }
    return undefined;
  }

  // -- gestures -> commands ---------------------------------------------------

  /** Rectangle selection; null when it contains no free node (visual
   * feedback only, no command). Nodes already inside a cluster are not in
   * `positions`, so a rectangle over clustered content alone resolves empty
   * and is rejected client-side. */
  rectangleSelect(x0: number, y0: number, x1: number, y1: number): Command | null {
    const nodes = this.freeNodesInRectangle(x0, y0, x1, y1);
    this.selectionInProgress = null;
    if (nodes.length === 0) return null;
    return { cmd: "select_cluster", nodes };
  }

  /** Lasso selection; the polygon closes itself between last and first point
   * (self-crossing lassos are fine under the even-odd rule). */
  lassoSelect(points: [number, number][]): Command | null {
    const nodes = this.freeNodesInLasso(points);
    this.selectionInProgress = null;
    if (nodes.length === 0) return null;
    return { cmd: "select_cluster", nodes };
  }

  /** Drop a dragged free node: into an expanded cluster region it becomes a
   * membership change, anywhere else a plain move. */
  dragDrop(nodeId: string, x: number, y: number): Command {
    const target = this.clusterAt(x, y);
    if (target) {
      return { cmd: "add_node_to_cluster", cluster_id: target.id, node: nodeId };
    }
    return { cmd: "move_node", node: nodeId, x, y };
  }

  /** Click on an expanded chord diagram collapses it; click on a collapsed
   * cluster-node expands it back. */
  clickAt(x: number, y: number): Command | null {
    const glyph = this.clusterNodeAt(x, y);
    if (glyph) return { cmd: "expand", cluster_id: glyph.id };
    const open = this.clusterAt(x, y);
    if (open) return { cmd: "collapse", cluster_id: open.id };
    return null;
  }

  // -- hover ------------------------------------------------------------------

  setHover(target: HoverTarget): void {
    this.hover = target;
  }

  /** Highlight set for the current hover target: hovering any arc of a node
   * lights up all arcs of that node plus every edge incident to them. */
  highlight(): Highlight {
    const h: Highlight = { nodes: new Set(), edgeIds: new Set(), arcs: new Set() };
    const doc = this.document;
    const hover = this.hover;
    if (!doc || !hover) return h;
    if (hover.kind === "node") {
      h.nodes.add(hover.node);
      doc.graph.edges.forEach((e, i) => {
        if (e.source === hover.node || e.target === hover.node) h.edgeIds.add(i);
      });
    } else if (hover.kind === "edge") {
      h.edgeIds.add(hover.edgeId);
    } else if (hover.kind === "cluster-node") {
      h.nodes.add(hover.clusterId);
    } else if (hover.kind === "arc") {
      const cluster = this.cluster(hover.clusterId);
      if (!cluster) return h;
      const arcIndexes = new Set<number>();
      cluster.arcs.forEach((arc, i) => {
        if (arc.node === hover.node) {
          arcIndexes.add(i);
          h.arcs.add(`${cluster.id}:${i}`);
        }
      });
      for (const chord of cluster.chords) {
        if (arcIndexes.has(chord.from_arc) || arcIndexes.has(chord.to_arc)) {
          h.edgeIds.add(chord.edge_id);
        }
      }
      for (const att of cluster.attachments) {
        if (arcIndexes.has(att.arc)) h.edgeIds.add(att.edge_id);
      }
    }
    return h;
  }

  /** Tooltip text for the hover target (labels come from the document). */
  tooltip(): string | null {
    const doc = this.document;
    const hover = this.hover;
    if (!doc || !hover) return null;
    const label = (id: string) =>
      doc.graph.nodes.find((n) => n.id === id)?.label ?? id;
    if (hover.kind === "node") return label(hover.node);
    if (hover.kind === "edge") {
      const e = doc.graph.edges[hover.edgeId];
      return e ? `${label(e.source)} — ${label(e.target)} (${e.weight})` : null;
    }
    if (hover.kind === "arc") return label(hover.node);
    if (hover.kind === "cluster-node") {
      const cluster = this.cluster(hover.clusterId);
      if (!cluster) return null;
      return cluster.members.map(label).join(", ");
    }
    return null;
  }

  // -- viewport (pure view transform, model untouched) -------------------------

  zoomAround(factor: number, cx: number, cy: number): void {
    const { scale, tx, ty } = this.viewport;
    const wx = (cx - tx) / scale;
    const wy = (cy - ty) / scale;
    const next = Math.min(Math.max(scale * factor, 0.1), 16);
    this.viewport = { scale: next, tx: cx - wx * next, ty: cy - wy * next };
  }

  pan(dx: number, dy: number): void {
    this.viewport = { ...this.viewport, tx: this.viewport.tx + dx, ty: this.viewport.ty + dy };
  }
}

export function pointInPolygon(x: number, y: number, poly: [number, number][]): boolean {
  let inside = false;
  const n = poly.length;
  for (let i = 0; i < n; i++) {
    const [x1, y1] = poly[i];
    const [x2, y2] = poly[(i + 1) % n];
    if (y1 > y !== y2 > y) {
      const cross = x1 + ((y - y1) * (x2 - x1)) / (y2 - y1);
      if (x < cross) inside = !inside;
    }
  }
  return inside;
}
