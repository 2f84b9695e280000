"""Session protocol: length-delimited JSON messages over stdio or a local
TCP socket.

Frame layout: one ASCII line holding the payload byte length, then the
payload (UTF-8 JSON), then a single ``\\n`` separator. Commands are objects
with a ``cmd`` field; every successful mutation answers with exactly one
``{"event": "state", "document": ...}`` message, failures answer with
``{"event": "error", "message": ...}`` and the session keeps running.
"""

from __future__ import annotations

import json
import logging
import socketserver
from typing import BinaryIO

from .document import dumps_canonical, state_to_doc
from .errors import ChordLinkError
from .gml import parse_gml
from .layout import ForceParams
from .session import Session

log = logging.getLogger("chordlink.protocol")


class ProtocolError(ChordLinkError):
    pass


def write_message(stream: BinaryIO, obj: dict) -> None:
    payload = dumps_canonical(obj).rstrip("\n").encode("utf-8")
    stream.write(f"{len(payload)}\n".encode("ascii"))
    stream.write(payload)
    stream.write(b"\n")
    stream.flush()


def read_message(stream: BinaryIO) -> dict | None:
    """Read one framed message; None at end of stream."""
    header = stream.readline()
    if not header:
        return None
    try:
        length = int(header.strip())
    except ValueError:
        raise ProtocolError(f"invalid frame header {header!r}")
    if length < 0 or length > 64 * 1024 * 1024:
        raise ProtocolError(f"unreasonable frame length {length}")
    payload = stream.read(length)
    if len(payload) != length:
        raise ProtocolError("truncated frame")
    stream.read(1)  # trailing separator
    try:
        obj = json.loads(payload.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ProtocolError(f"invalid JSON payload: {exc}")
    if not isinstance(obj, dict):
        raise ProtocolError("message must be a JSON object")
    return obj


def _force_params(msg: dict) -> ForceParams:
    kwargs = {}
    for key in ("repulsion", "rest_length", "stiffness", "cooling"):
        if key in msg:
            kwargs[key] = float(msg[key])
    for key in ("iterations", "seed"):
        if key in msg:
            kwargs[key] = int(msg[key])
    return ForceParams(**kwargs)


def handle_command(session: Session, msg: dict) -> dict:
    """Apply one command; returns the event to send back."""
    try:
        cmd = msg.get("cmd")
        if cmd == "load":
            session.load_graph(parse_gml(msg["gml"]))
        elif cmd == "run_layout":
            session.run_layout(_force_params(msg))
        elif cmd == "select_cluster":
            if "nodes" in msg:
                session.select_cluster(list(msg["nodes"]), msg.get("cluster_id"))
            elif "rectangle" in msg:
                session.select_rectangle(*[float(v) for v in msg["rectangle"]])
            elif "lasso" in msg:
                session.select_lasso([(float(x), float(y)) for x, y in msg["lasso"]])
            else:
                raise ProtocolError("select_cluster needs nodes, rectangle or lasso")
        elif cmd == "add_node_to_cluster":
            session.add_node_to_cluster(msg["cluster_id"], msg["node"])
        elif cmd == "remove_cluster":
            session.remove_cluster(msg["cluster_id"])
        elif cmd == "collapse":
            session.collapse(msg["cluster_id"])
        elif cmd == "expand":
            session.expand(msg["cluster_id"])
        elif cmd == "move_node":
            session.move_node(msg["node"], float(msg["x"]), float(msg["y"]))
        elif cmd == "move_cluster":
            session.move_cluster(msg["cluster_id"], float(msg["dx"]), float(msg["dy"]))
        elif cmd == "set_label_policy":
            session.set_label_policy(msg["mode"], msg.get("overrides"))
        else:
            raise ProtocolError(f"unknown command {cmd!r}")
    except (ChordLinkError, KeyError, TypeError, ValueError) as exc:
        return {"event": "error", "message": str(exc) or repr(exc)}
    doc = state_to_doc(session.state, session.label_policy) if session.state else {}
    return {"event": "state", "document": doc}


def run_session(session: Session, instream: BinaryIO, outstream: BinaryIO) -> None:
    """Serve one command stream until EOF or a shutdown command."""
    while True:
        try:
            msg = read_message(instream)
        except ProtocolError as exc:
            write_message(outstream, {"event": "error", "message": str(exc)})
            log.error("unrecoverable framing error: %s", exc)
            return
        if msg is None:
            return
        if msg.get("cmd") == "shutdown":
            write_message(outstream, {"event": "bye"})
            return
        write_message(outstream, handle_command(session, msg))


def serve_stdio(session: Session) -> None:
    import sys

    run_session(session, sys.stdin.buffer, sys.stdout.buffer)


def serve_tcp(session: Session, port: int, host: str = "127.0.0.1") -> None:
    """Handle one client at a time until a client sends shutdown."""
    shutdown = {"flag": False}

    class Handler(socketserver.StreamRequestHandler):
        def handle(self):
            log.info("client connected")
            while True:
                try:
                    msg = read_message(self.rfile)
                except ProtocolError as exc:
                    write_message(self.wfile, {"event": "error", "message": str(exc)})
                    return
                if msg is None:
                    return
                if msg.get("cmd") == "shutdown":
                    write_message(self.wfile, {"event": "bye"})
                    shutdown["flag"] = True
                    return
                write_message(self.wfile, handle_command(session, msg))

    with socketserver.TCPServer((host, port), Handler, bind_and_activate=False) as server:
        server.allow_reuse_address = True
        server.server_bind()
        server.server_activate()
        log.info("serving on %s:%d", host, server.server_address[1])
        print(f"listening on {host}:{server.server_address[1]}", flush=True)
        while not shutdown["flag"]:
            server.handle_request()
