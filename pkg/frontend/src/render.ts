/** Scene construction from the last engine event. Pure: the scene is a list
 * of typed shapes derived from the received document alone, so tests can
 * assert that nothing is rendered that the engine did not send. */

import type { ClusterDoc, LayoutDocument } from "./types.js";
import { clusterNodeRadius, NODE_RADIUS } from "./types.js";
import type { Highlight, ViewModel } from "./viewmodel.js";

export const EDGE_WIDTHS = [0.8, 1.6, 2.4, 3.2, 4.0];

export type Shape =
  | { kind: "edge"; edgeId: number; x1: number; y1: number; x2: number; y2: number; width: number; highlighted: boolean }
  | { kind: "node"; node: string; x: number; y: number; r: number; highlighted: boolean }
  | { kind: "cluster-node"; clusterId: string; x: number; y: number; r: number; highlighted: boolean }
  | { kind: "region"; clusterId: string; x: number; y: number; r: number }
  | { kind: "arc"; clusterId: string; arcIndex: number; node: string; cx: number; cy: number; r: number; startAngle: number; endAngle: number; color: string; highlighted: boolean }
  | { kind: "chord"; clusterId: string; edgeId: number; x1: number; y1: number; x2: number; y2: number; ctrlX: number; ctrlY: number; colorFrom: string; colorTo: string; width: number; highlighted: boolean }
  | { kind: "label"; owner: string; x: number; y: number; text: string };

export function weightThresholds(weights: number[]): number[] | null {
  if (weights.length === 0) return null;
  const lo = Math.min(...weights);
  const hi = Math.max(...weights);
  if (lo === hi) return null;
  const sorted = [...weights].sort((a, b) => a - b);
  const quantile = (q: number) => {
    const pos = (sorted.length - 1) * q;
    const base = Math.floor(pos);
    const rest = pos - base;
    return base + 1 < sorted.length
      ? sorted[base] + rest * (sorted[base + 1] - sorted[base])
      : sorted[base];
  };
  return [0.2, 0.4, 0.6, 0.8].map(quantile);
}

export function thicknessClass(weight: number, thresholds: number[] | null): number {
  if (!thresholds) return 2; // single quantile: everything mid-width
  let cls = 0;
  for (const t of thresholds) if (weight > t) cls++;
  return cls;
}

function circlePoint(cluster: ClusterDoc, angle: number): [number, number] {
  return [
    cluster.center[0] + cluster.radius * Math.cos(angle),
    cluster.center[1] + cluster.radius * Math.sin(angle),
  ];
}

/** Visible label owners under the document's policy (mirrors the engine). */
export function visibleLabels(doc: LayoutDocument, zoom: number): Set<string> {
  const policy = doc.label_policy ?? { mode: "all", overrides: {} };
  const degree = new Map<string, number>();
  for (const n of doc.graph.nodes) degree.set(n.id, 0);
  for (const e of doc.graph.edges) {
    degree.set(e.source, (degree.get(e.source) ?? 0) + 1);
    degree.set(e.target, (degree.get(e.target) ?? 0) + 1);
  }
  let visible: Set<string>;
  if (policy.mode === "all") {
    visible = new Set(doc.graph.nodes.map((n) => n.id));
  } else if (policy.mode === "none") {
    visible = new Set();
  } else {
    const maxDeg = Math.max(0, ...degree.values());
    const minZoom = 0.1;
    const z = Math.max(zoom, minZoom);
    const threshold =
      z >= 1 || maxDeg === 0 ? 0 : Math.ceil((maxDeg * (1 - z)) / (1 - minZoom));
    visible = new Set(
      doc.graph.nodes.filter((n) => (degree.get(n.id) ?? 0) >= threshold).map((n) => n.id),
    );
  }
  for (const [node, flag] of Object.entries(policy.overrides ?? {})) {
    if (flag) visible.add(node);
    else visible.delete(node);
  }
  return visible;
}

function edgeEndpoint(
  doc: LayoutDocument,
  edgeId: number,
  node: string,
): [number, number] | null {
  const free = doc.positions[node];
  if (free) return free;
  for (const cluster of doc.clusters) {
    if (!cluster.members.includes(node)) continue;
    if (cluster.collapsed) return cluster.center;
    const att = cluster.attachments.find((a) => a.edge_id === edgeId);
    if (!att) return cluster.center;
    return circlePoint(cluster, att.angle);
  }
  return null;
}

export function buildScene(vm: ViewModel): Shape[] {
  const doc = vm.document;
  if (!doc) return [];
  const highlight: Highlight = vm.highlight();
  const shapes: Shape[] = [];
  const thresholds = weightThresholds(doc.graph.edges.map((e) => e.weight));
  const widthOf = (w: number) => EDGE_WIDTHS[thicknessClass(w, thresholds)];

  const memberOwner = new Map<string, ClusterDoc>();
  for (const cluster of doc.clusters) {
    for (const m of cluster.members) memberOwner.set(m, cluster);
  }

  doc.graph.edges.forEach((e, edgeId) => {
    const ownerS = memberOwner.get(e.source);
    const ownerT = memberOwner.get(e.target);
    if (ownerS && ownerS === ownerT) return; // internal: drawn as a chord
    const p1 = edgeEndpoint(doc, edgeId, e.source);
    const p2 = edgeEndpoint(doc, edgeId, e.target);
    if (!p1 || !p2) return;
    shapes.push({
      kind: "edge",
      edgeId,
      x1: p1[0], y1: p1[1], x2: p2[0], y2: p2[1],
      width: widthOf(e.weight),
      highlighted: highlight.edgeIds.has(edgeId),
    });
  });

  for (const cluster of doc.clusters) {
    if (cluster.collapsed) {
      shapes.push({
        kind: "cluster-node",
        clusterId: cluster.id,
        x: cluster.center[0], y: cluster.center[1],
        r: clusterNodeRadius(cluster.members.length),
        highlighted: highlight.nodes.has(cluster.id),
      });
      continue;
    }
    shapes.push({
      kind: "region",
      clusterId: cluster.id,
      x: cluster.center[0], y: cluster.center[1], r: cluster.radius,
    });
    cluster.arcs.forEach((arc, arcIndex) => {
      shapes.push({
        kind: "arc",
        clusterId: cluster.id,
        arcIndex,
        node: arc.node,
        cx: cluster.center[0], cy: cluster.center[1], r: cluster.radius,
        startAngle: arc.start_angle, endAngle: arc.end_angle,
        color: arc.color,
        highlighted: highlight.arcs.has(`${cluster.id}:${arcIndex}`),
      });
    });
    for (const chord of cluster.chords) {
      const [x1, y1] = circlePoint(cluster, chord.from_angle);
      const [x2, y2] = circlePoint(cluster, chord.to_angle);
      const mx = (x1 + x2) / 2;
      const my = (y1 + y2) / 2;
      const len = Math.hypot(x2 - x1, y2 - y1);
      let dx = cluster.center[0] - mx;
      let dy = cluster.center[1] - my;
      const norm = Math.hypot(dx, dy);
      if (norm < 1e-9) {
        dx = -(y2 - y1) / Math.max(len, 1e-9);
        dy = (x2 - x1) / Math.max(len, 1e-9);
      } else {
        dx /= norm;
        dy /= norm;
      }
      const sag = 0.15 * len;
      const weight = doc.graph.edges[chord.edge_id]?.weight ?? 1;
      shapes.push({
        kind: "chord",
        clusterId: cluster.id,
        edgeId: chord.edge_id,
        x1, y1, x2, y2,
        ctrlX: mx + dx * 2 * sag,
        ctrlY: my + dy * 2 * sag,
        colorFrom: cluster.colors[chord.edge[0]] ?? "#888888",
        colorTo: cluster.colors[chord.edge[1]] ?? "#888888",
        width: widthOf(weight),
        highlighted: highlight.edgeIds.has(chord.edge_id),
      });
    }
  }

  for (const [node, [x, y]] of Object.entries(doc.positions)) {
    shapes.push({
      kind: "node",
      node, x, y, r: NODE_RADIUS,
      highlighted: highlight.nodes.has(node),
    });
  }

  const labels = visibleLabels(doc, vm.viewport.scale);
  const labelText = new Map(doc.graph.nodes.map((n) => [n.id, n.label]));
  for (const node of [...labels].sort()) {
    const free = doc.positions[node];
    if (free) {
      shapes.push({
        kind: "label", owner: node,
        x: free[0] + NODE_RADIUS + 2, y: free[1] - NODE_RADIUS,
        text: labelText.get(node) ?? node,
      });
      continue;
    }
    const owner = memberOwner.get(node);
    if (!owner || owner.collapsed) continue;
    // label near the node's longest arc
    const arcs = owner.arcs.filter((a) => a.node === node);
    if (arcs.length === 0) continue;
    const longest = arcs.reduce((a, b) =>
      b.end_angle - b.start_angle > a.end_angle - a.start_angle ? b : a);
    const mid = (longest.start_angle + longest.end_angle) / 2;
    const [px, py] = circlePoint(owner, mid);
    const ux = (px - owner.center[0]) / owner.radius;
    const uy = (py - owner.center[1]) / owner.radius;
    shapes.push({
      kind: "label", owner: node,
      x: px + ux * 12, y: py + uy * 12,
      text: labelText.get(node) ?? node,
    });
  }

  return shapes;
}

// -- SVG writer ----------------------------------------------------------------

const n3 = (v: number) => v.toFixed(3);

function arcPath(s: Extract<Shape, { kind: "arc" }>): string {
  const x1 = s.cx + s.r * Math.cos(s.startAngle);
  const y1 = s.cy + s.r * Math.sin(s.startAngle);
  const x2 = s.cx + s.r * Math.cos(s.endAngle);
  const y2 = s.cy + s.r * Math.sin(s.endAngle);
  const large = s.endAngle - s.startAngle > Math.PI ? 1 : 0;
  return `M ${n3(x1)} ${n3(y1)} A ${n3(s.r)} ${n3(s.r)} 0 ${large} 1 ${n3(x2)} ${n3(y2)}`;
}

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Serialize a scene to an SVG fragment (the browser shell owns the <svg>). */
export function sceneToSvg(shapes: Shape[]): string {
  const defs: string[] = [];
  const body: string[] = [];
  let gradientId = 0;
  for (const s of shapes) {
    switch (s.kind) {
      case "edge":
        body.push(
          `<line class="edge${s.highlighted ? " hl" : ""}" data-edge="${s.edgeId}" ` +
          `x1="${n3(s.x1)}" y1="${n3(s.y1)}" x2="${n3(s.x2)}" y2="${n3(s.y2)}" ` +
          `stroke="${s.highlighted ? "#e8653a" : "#9aa0a6"}" stroke-width="${n3(s.width)}"/>`,
        );
        break;
      case "node":
        body.push(
          `<circle class="node${s.highlighted ? " hl" : ""}" data-node="${s.node}" ` +
          `cx="${n3(s.x)}" cy="${n3(s.y)}" r="${n3(s.r)}" fill="#4c78a8"/>`,
        );
        break;
      case "cluster-node":
        body.push(
          `<circle class="cluster-node${s.highlighted ? " hl" : ""}" data-cluster="${s.clusterId}" ` +
          `cx="${n3(s.x)}" cy="${n3(s.y)}" r="${n3(s.r)}" fill="#4c78a8" stroke="#333"/>`,
        );
        break;
      case "region":
        body.push(
          `<circle class="region" data-cluster="${s.clusterId}" cx="${n3(s.x)}" cy="${n3(s.y)}" ` +
          `r="${n3(s.r)}" fill="none" stroke="#dddddd" stroke-dasharray="4 3"/>`,
        );
        break;
      case "arc":
        body.push(
          `<path class="arc${s.highlighted ? " hl" : ""}" data-cluster="${s.clusterId}" ` +
          `data-arc="${s.arcIndex}" data-node="${s.node}" d="${arcPath(s)}" fill="none" ` +
          `stroke="${s.color}" stroke-width="${s.highlighted ? 10 : 7}"/>`,
        );
        break;
      case "chord": {
        const gid = `uigrad${gradientId++}`;
        defs.push(
          `<linearGradient id="${gid}" gradientUnits="userSpaceOnUse" ` +
          `x1="${n3(s.x1)}" y1="${n3(s.y1)}" x2="${n3(s.x2)}" y2="${n3(s.y2)}">` +
          `<stop offset="0" stop-color="${s.colorFrom}"/>` +
          `<stop offset="1" stop-color="${s.colorTo}"/></linearGradient>`,
        );
        body.push(
          `<path class="chord${s.highlighted ? " hl" : ""}" data-edge="${s.edgeId}" ` +
          `d="M ${n3(s.x1)} ${n3(s.y1)} Q ${n3(s.ctrlX)} ${n3(s.ctrlY)} ${n3(s.x2)} ${n3(s.y2)}" ` +
          `fill="none" stroke="url(#${gid})" stroke-width="${n3(s.width)}"/>`,
        );
        break;
      }
      case "label":
        body.push(
          `<text class="label" x="${n3(s.x)}" y="${n3(s.y)}" font-size="10">` +
          `${escapeXml(s.text)}</text>`,
        );
        break;
    }
  }
  const defsBlock = defs.length ? `<defs>${defs.join("")}</defs>` : "";
  return `${defsBlock}<g class="scene">${body.join("")}</g>`;
}
