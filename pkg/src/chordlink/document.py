"""Versioned JSON serialization of a layout state.

The document is self-contained: it embeds the graph, free node positions,
and per-cluster geometry (region, arcs, chords, external attachment points,
collapsed flag, colors). Serialization is canonical (sorted keys, compact
separators) so identical states produce byte-identical text.
"""

from __future__ import annotations

import json
from typing import Any

from .chords import Chord
from .errors import SchemaError
from .merging import Arc
from .model import Cluster, Graph, LayoutState, Point
from .region import ClusterRegion
from .session import Attachment, ClusterLayout, LabelPolicy

SCHEMA_VERSION = 1


def state_to_doc(state: LayoutState, label_policy: LabelPolicy | None = None) -> dict:
    graph = state.graph
    doc: dict[str, Any] = {
        "version": SCHEMA_VERSION,
        "graph": {
            "nodes": [{"id": n, "label": graph.labels[n]} for n in graph.nodes],
            "edges": [
                {"source": e.source, "target": e.target, "weight": e.weight}
                for e in graph.edges
            ],
        },
        "positions": {n: [p.x, p.y] for n, p in sorted(state.free_positions.items())},
        "clusters": [],
    }
    for cid in sorted(state.cluster_layouts):
        cl: ClusterLayout = state.cluster_layouts[cid]
        doc["clusters"].append({
            "id": cid,
            "members": sorted(cl.cluster.members),
            "center": [cl.region.center.x, cl.region.center.y],
            "radius": cl.region.radius,
            "collapsed": cl.collapsed,
            "arcs": [
                {
                    "node": a.source_node,
                    "start_angle": a.start_angle,
                    "end_angle": a.end_angle,
                    "in_deg": a.in_deg,
                    "color": a.color,
                }
                for a in cl.arcs
            ],
            "chords": [
                {
                    "edge": list(ch.edge),
                    "edge_id": ch.edge_id,
                    "from_arc": ch.from_arc,
                    "to_arc": ch.to_arc,
                    "from_angle": ch.from_angle,
                    "to_angle": ch.to_angle,
                }
                for ch in cl.chords
            ],
            "attachments": [
                {
                    "edge_id": eid,
                    "arc": att.arc_index,
                    "angle": att.angle,
                }
                for eid, att in sorted(cl.attachments.items())
            ],
            "member_positions": {
                n: [p.x, p.y] for n, p in sorted(cl.member_positions.items())
            },
            "colors": dict(sorted(cl.colors.items())),
            "boundary_mismatch_cost": cl.boundary_mismatch_cost,
            "chord_cost": cl.chord_cost,
            "arcs_shrunk": cl.arcs_shrunk,
        })
    policy = label_policy or LabelPolicy()
    doc["label_policy"] = {"mode": policy.mode, "overrides": dict(sorted(policy.overrides.items()))}
    return doc


def dumps_canonical(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def write_layout(state: LayoutState, label_policy: LabelPolicy | None = None) -> str:
    return dumps_canonical(state_to_doc(state, label_policy))


def doc_to_state(doc: dict) -> tuple[LayoutState, LabelPolicy]:
    if not isinstance(doc, dict):
        raise SchemaError("layout document must be a JSON object")
    if doc.get("version") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported document version {doc.get('version')!r}")
    try:
        gdoc = doc["graph"]
        graph = Graph(
            [n["id"] for n in gdoc["nodes"]],
            [(e["source"], e["target"], float(e["weight"])) for e in gdoc["edges"]],
            {n["id"]: n.get("label", n["id"]) for n in gdoc["nodes"]},
        )
        positions = {n: Point(xy[0], xy[1]) for n, xy in doc.get("positions", {}).items()}
        state = LayoutState(graph, positions, {})
        for cdoc in doc.get("clusters", []):
            cid = cdoc["id"]
            cluster = Cluster(cid, frozenset(cdoc["members"]))
            region = ClusterRegion(Point(cdoc["center"][0], cdoc["center"][1]), cdoc["radius"])
            arcs = [
                Arc(a["node"], a["start_angle"], a["end_angle"], [], a.get("in_deg", 0), a.get("color", ""))
                for a in cdoc["arcs"]
            ]
            chords = [
                Chord(ch["edge_id"], (ch["edge"][0], ch["edge"][1]), ch["from_arc"],
                      ch["to_arc"], ch["from_angle"], ch["to_angle"])
                for ch in cdoc["chords"]
            ]
            attachments = {
                att["edge_id"]: Attachment(att["arc"], att["angle"])
                for att in cdoc["attachments"]
            }
            member_positions = {
                n: Point(xy[0], xy[1]) for n, xy in cdoc["member_positions"].items()
            }
            state.cluster_layouts[cid] = ClusterLayout(
                cluster=cluster,
                region=region,
                arcs=arcs,
                chords=chords,
                attachments=attachments,
                member_positions=member_positions,
                colors=dict(cdoc.get("colors", {})),
                collapsed=bool(cdoc.get("collapsed", False)),
                boundary_mismatch_cost=int(cdoc.get("boundary_mismatch_cost", 0)),
                chord_cost=float(cdoc.get("chord_cost", 0.0)),
                arcs_shrunk=bool(cdoc.get("arcs_shrunk", False)),
            )
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed layout document: {exc}") from exc
    state.check_partition()
    policy_doc = doc.get("label_policy", {})
    policy = LabelPolicy(policy_doc.get("mode", "all"), dict(policy_doc.get("overrides", {})))
    return state, policy


def read_layout(text: str) -> tuple[LayoutState, LabelPolicy]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return doc_to_state(doc)
