"""GML import/export for the subset used by the engine.

Grammar subset: nested ``key [ ... ]`` records with int/real/string scalar
values. ``graph`` records hold ``node`` (id, label) and ``edge`` (source,
target, weight/value, label) children; unknown keys are kept in the parsed
document tree so re-serializing a document preserves them.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .errors import GmlError
from .model import Graph

log = logging.getLogger("chordlink.gml")


@dataclass
class GmlRecord:
    """One ``key [ ... ]`` block: ordered (key, value) pairs, values are
    scalars or nested records."""

    entries: list[tuple[str, object]] = field(default_factory=list)

    def first(self, key: str):
        for k, v in self.entries:
            if k == key:
                return v
        return None

    def all(self, key: str) -> list:
        return [v for k, v in self.entries if k == key]


@dataclass
class GmlDocument:
    root: GmlRecord


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def _advance(self, n: int) -> None:
        for ch in self.text[self.pos:self.pos + n]:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n

    def tokens(self):
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch in " \t\r\n":
                self._advance(1)
                continue
            if ch == "#":  # comment to end of line
                end = text.find("\n", self.pos)
                self._advance((end if end != -1 else len(text)) - self.pos)
                continue
            line, col = self.line, self.col
            if ch in "[]":
                self._advance(1)
                yield (ch, ch, line, col)
                continue
            if ch == '"':
                end = text.find('"', self.pos + 1)
                if end == -1:
                    raise GmlError("unterminated string", line, col)
                value = text[self.pos + 1:end]
                self._advance(end + 1 - self.pos)
                yield ("string", value, line, col)
                continue
            j = self.pos
            while j < len(text) and text[j] not in ' \t\r\n[]"#':
                j += 1
            word = text[self.pos:j]
            self._advance(j - self.pos)
            yield ("word", word, line, col)
        yield ("eof", "", self.line, self.col)


def _parse_value(word: str):
    try:
        return int(word)
    except ValueError:
        pass
    try:
        return float(word)
    except ValueError:
        pass
    return word


def parse_document(text: str) -> GmlDocument:
    """Parse GML text into a document tree."""
    toks = list(_Tokenizer(text).tokens())
    idx = 0

    def parse_list(closing_expected: bool) -> GmlRecord:
        nonlocal idx
        rec = GmlRecord()
        while True:
            kind, value, line, col = toks[idx]
            if kind == "eof":
                if closing_expected:
                    raise GmlError("unexpected end of input, missing ']'", line, col)
                return rec
            if kind == "]":
                if not closing_expected:
                    raise GmlError("unexpected ']'", line, col)
                idx += 1
                return rec
            if kind != "word":
                raise GmlError(f"expected a key, got {value!r}", line, col)
            key = value
            idx += 1
            kind, value, line, col = toks[idx]
            if kind == "[":
                idx += 1
                rec.entries.append((key, parse_list(True)))
            elif kind == "word":
                idx += 1
                rec.entries.append((key, _parse_value(value)))
            elif kind == "string":
                idx += 1
                rec.entries.append((key, value))
            else:
                raise GmlError(f"expected a value for key {key!r}", line, col)

    return GmlDocument(parse_list(False))


def document_to_graph(doc: GmlDocument) -> Graph:
    """Extract a Graph from a parsed document.

    Parallel edges are collapsed into one edge with summed weight; self-loops
    are dropped with a warning. Missing weights default to 1.0.
    """
    graph_rec = doc.root.first("graph")
    if graph_rec is None or not isinstance(graph_rec, GmlRecord):
        raise GmlError("no 'graph' record found")

    nodes: list[str] = []
    labels: dict[str, str] = {}
    for nrec in graph_rec.all("node"):
        if not isinstance(nrec, GmlRecord):
            raise GmlError("'node' must be a record")
        nid = nrec.first("id")
        if nid is None:
            raise GmlError("node record without 'id'")
        nid = str(nid)
        if nid in labels:
            raise GmlError(f"duplicate node id {nid!r}")
        nodes.append(nid)
        label = nrec.first("label")
        labels[nid] = str(label) if label is not None else nid

    node_set = set(nodes)
    collapsed: dict[tuple[str, str], float] = {}
    order: list[tuple[str, str]] = []
    for erec in graph_rec.all("edge"):
        if not isinstance(erec, GmlRecord):
            raise GmlError("'edge' must be a record")
        src = erec.first("source")
        tgt = erec.first("target")
        if src is None or tgt is None:
            raise GmlError("edge record without source/target")
        src, tgt = str(src), str(tgt)
        for endpoint in (src, tgt):
            if endpoint not in node_set:
                raise GmlError(f"edge references undeclared node {endpoint!r}")
        if src == tgt:
            log.warning("dropping self-loop on node %r", src)
            continue
        weight = erec.first("weight")
        if weight is None:
            weight = erec.first("value")
        if weight is None:
            weight = 1.0
        weight = float(weight)
        if weight <= 0:
            raise GmlError(f"edge ({src!r}, {tgt!r}) has non-positive weight {weight}")
        key = (src, tgt) if src <= tgt else (tgt, src)
        if key in collapsed:
            collapsed[key] += weight
        else:
            collapsed[key] = weight
            order.append(key)
    edges = [(u, v, collapsed[(u, v)]) for u, v in order]
    return Graph(nodes, edges, labels)


def parse_gml(text: str) -> Graph:
    return document_to_graph(parse_document(text))


def _format_scalar(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, (int, float)):
        return repr(value)
    text = str(value)
    return f'"{text}"'


def _write_record(rec: GmlRecord, indent: int, out: list[str]) -> None:
    pad = "  " * indent
    for key, value in rec.entries:
        if isinstance(value, GmlRecord):
            out.append(f"{pad}{key} [")
            _write_record(value, indent + 1, out)
            out.append(f"{pad}]")
        else:
            out.append(f"{pad}{key} {_format_scalar(value)}")


def write_document(doc: GmlDocument) -> str:
    out: list[str] = []
    _write_record(doc.root, 0, out)
    return "\n".join(out) + "\n"


def graph_to_document(graph: Graph) -> GmlDocument:
    g = GmlRecord()
    for nid in graph.nodes:
        n = GmlRecord([("id", nid), ("label", graph.labels[nid])])
        g.entries.append(("node", n))
    for e in graph.edges:
        rec = GmlRecord([("source", e.source), ("target", e.target), ("weight", e.weight)])
        g.entries.append(("edge", rec))
    return GmlDocument(GmlRecord([("graph", g)]))


def write_gml(graph: Graph) -> str:
    return write_document(graph_to_document(graph))
