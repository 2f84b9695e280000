"""Command-line front-end: batch layout/cluster/render plus the serve loop.

Exit codes: 0 success, 1 usage, 2 input error, 3 internal invariant
violation. Set CHORDLINK_LOG to a logging level name for diagnostics.
"""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
from pathlib import Path

from .document import read_layout, write_layout
from .errors import (
    ChordLinkError,
    GmlError,
    GraphError,
    InternalInvariantError,
    OracleSizeError,
    SchemaError,
    SessionError,
)
from .gml import parse_gml
from .layout import ForceParams
from .protocol import serve_stdio, serve_tcp
from .session import LabelPolicy, Session
from .svg import export_svg

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="chordlink", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_layout = sub.add_parser("layout", help="parse GML and compute the base node-link layout")
    p_layout.add_argument("input", help="GML file")
    p_layout.add_argument("--seed", type=int, default=0)
    p_layout.add_argument("--iterations", type=int, default=300)
    p_layout.add_argument("--repulsion", type=float, default=1.0)
    p_layout.add_argument("--rest-length", type=float, default=80.0)
    p_layout.add_argument("--stiffness", type=float, default=1.0)
    p_layout.add_argument("--cooling", type=float, default=0.95)
    p_layout.add_argument("--out", help="output layout document (default stdout)")

    p_cluster = sub.add_parser("cluster", help="redraw a node selection as a chord diagram")
    p_cluster.add_argument("input", help="layout document")
    p_cluster.add_argument("--nodes", required=True, help="comma-separated node ids")
    p_cluster.add_argument("--cluster-id", default=None)
    p_cluster.add_argument("--permutation", choices=["dp", "oracle", "none"], default="dp")
    p_cluster.add_argument("--chords", choices=["greedy", "oracle"], default="greedy")
    p_cluster.add_argument("--out", help="output layout document (default stdout)")

    p_render = sub.add_parser("render", help="export a layout document as SVG")
    p_render.add_argument("input", help="layout document")
    p_render.add_argument("--labels", choices=["all", "none", "auto"], default=None,
                          help="override the document's label policy")
    p_render.add_argument("--zoom", type=float, default=1.0)
    p_render.add_argument("--out", help="output SVG file (default stdout)")

    p_serve = sub.add_parser("serve", help="run the session protocol")
    p_serve.add_argument("--port", type=int, default=None,
                         help="serve on a local TCP port (default: stdio)")
    p_serve.add_argument("--permutation", choices=["dp", "oracle", "none"], default="dp")
    p_serve.add_argument("--chords", choices=["greedy", "oracle"], default="greedy")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _session_from_document(path: str, permutation: str, chords: str) -> Session:
    state, policy = read_layout(Path(path).read_text(encoding="utf-8"))
    session = Session(permutation=permutation, chords=chords)
    session.state = state
    session.label_policy = policy
    taken = [int(m.group(1)) for cid in state.cluster_layouts
             if (m := re.fullmatch(r"c(\d+)", cid))]
    session._next_cluster = max(taken, default=-1) + 1
    return session


def _cmd_layout(args) -> int:
    graph = parse_gml(Path(args.input).read_text(encoding="utf-8"))
    session = Session()
    session.load_graph(graph)
    session.run_layout(ForceParams(
        repulsion=args.repulsion,
        rest_length=args.rest_length,
        stiffness=args.stiffness,
        iterations=args.iterations,
        cooling=args.cooling,
        seed=args.seed,
    ))
    _emit(write_layout(session.state, session.label_policy), args.out)
    return EXIT_OK


def _cmd_cluster(args) -> int:
    session = _session_from_document(args.input, args.permutation, args.chords)
    nodes = [n.strip() for n in args.nodes.split(",") if n.strip()]
    session.select_cluster(nodes, args.cluster_id)
    _emit(write_layout(session.state, session.label_policy), args.out)
    return EXIT_OK


def _cmd_render(args) -> int:
    session = _session_from_document(args.input, "dp", "greedy")
    policy = session.label_policy
    if args.labels is not None:
        policy = LabelPolicy(args.labels, policy.overrides)
    _emit(export_svg(session.state, policy, args.zoom), args.out)
    return EXIT_OK


def _cmd_serve(args) -> int:
    session = Session(permutation=args.permutation, chords=args.chords)
    if args.port is None:
        serve_stdio(session)
    else:
        serve_tcp(session, args.port)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    level = os.environ.get("CHORDLINK_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    handlers = {
        "layout": _cmd_layout,
        "cluster": _cmd_cluster,
        "render": _cmd_render,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except InternalInvariantError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (GmlError, SchemaError, SessionError, GraphError, OracleSizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ChordLinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
