/** Wire types shared with the engine: layout documents, commands, events. */

export interface GraphNodeDoc {
  id: string;
  label: string;
}

export interface GraphEdgeDoc {
  source: string;
  target: string;
  weight: number;
}

export interface ArcDoc {
  node: string;
  start_angle: number;
  end_angle: number; // may exceed 2*pi when the arc wraps
  in_deg: number;
  color: string;
}

export interface ChordDoc {
  edge: [string, string];
  edge_id: number;
  from_arc: number;
  to_arc: number;
  from_angle: number;
  to_angle: number;
}

export interface AttachmentDoc {
  edge_id: number;
  arc: number;
  angle: number;
}

export interface ClusterDoc {
  id: string;
  members: string[];
  center: [number, number];
  radius: number;
  collapsed: boolean;
  arcs: ArcDoc[];
  chords: ChordDoc[];
  attachments: AttachmentDoc[];
  member_positions: Record<string, [number, number]>;
  colors: Record<string, string>;
  boundary_mismatch_cost: number;
  chord_cost: number;
  arcs_shrunk: boolean;
}

export interface LayoutDocument {
  version: number;
  graph: { nodes: GraphNodeDoc[]; edges: GraphEdgeDoc[] };
  positions: Record<string, [number, number]>;
  clusters: ClusterDoc[];
  label_policy?: { mode: string; overrides: Record<string, boolean> };
}

export type Command =
  | { cmd: "load"; gml: string }
  | {
      cmd: "run_layout";
      seed?: number;
      iterations?: number;
      repulsion?: number;
      rest_length?: number;
      stiffness?: number;
      cooling?: number;
    }
  | { cmd: "select_cluster"; nodes: string[]; cluster_id?: string }
  | { cmd: "add_node_to_cluster"; cluster_id: string; node: string }
  | { cmd: "remove_cluster"; cluster_id: string }
  | { cmd: "collapse"; cluster_id: string }
  | { cmd: "expand"; cluster_id: string }
  | { cmd: "move_node"; node: string; x: number; y: number }
  | { cmd: "move_cluster"; cluster_id: string; dx: number; dy: number }
  | { cmd: "set_label_policy"; mode: string; overrides?: Record<string, boolean> }
  | { cmd: "shutdown" };

export type EngineEvent =
  | { event: "state"; document: LayoutDocument }
  | { event: "error"; message: string }
  | { event: "bye" };

export const NODE_RADIUS = 6.0;

export function clusterNodeRadius(memberCount: number): number {
  // area proportional to the member count
  return NODE_RADIUS * Math.sqrt(memberCount);
}
