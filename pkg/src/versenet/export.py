"""Graph and table serializers. Every writer goes through ``write_atomic``."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .graph import CoocGraph

__all__ = [
    "GRAPH_FORMATS",
    "write_atomic",
    "csv_text",
    "graph_to_json",
    "graph_from_json",
    "graph_to_edge_csv",
    "graph_to_graphml",
    "graph_to_dot",
    "render_graph",
    "GRAPH_SUFFIX",
]

GRAPH_FORMATS = ("csv", "json", "graphml", "dot")
GRAPH_SUFFIX = {"csv": ".edges.csv", "json": ".json", "graphml": ".graphml", "dot": ".dot"}


def write_atomic(path: str | Path, text: str) -> Path:
    """Write to a temp file in the target directory, then rename over ``path``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _cell(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return x


def csv_text(header: Sequence[str], rows: Iterable[Mapping | Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        if isinstance(row, Mapping):
            row = [row.get(h, "") for h in header]
        w.writerow([_cell(x) for x in row])
    return buf.getvalue()


def graph_to_json(g: CoocGraph, node_attributes: Mapping[str, Mapping] | None = None) -> str:
    nodes = []
    for v in g.nodes:
        extra = dict(node_attributes.get(v, {})) if node_attributes else {}
        nodes.append({"id": v, **extra} if extra else v)
    edges = [{"s": a, "t": b, "w": w} for (a, b), w in g.edges.items()]
    return json.dumps({"nodes": nodes, "edges": edges}, ensure_ascii=False, indent=1) + "\n"


def graph_from_json(text: str) -> CoocGraph:
    data = json.loads(text)
    g = CoocGraph.from_edges((e["s"], e["t"], int(e["w"])) for e in data["edges"])
    listed = {n if isinstance(n, str) else n["id"] for n in data.get("nodes", [])}
    if listed and listed != set(g.nodes):
        raise ValueError("node list does not match edge endpoints")
    return g


def graph_to_edge_csv(g: CoocGraph) -> str:
    return csv_text(["source", "target", "weight"], ((a, b, w) for (a, b), w in g.edges.items()))


_GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


def graph_to_graphml(g: CoocGraph, node_attributes: Mapping[str, Mapping] | None = None,
                     graph_id: str = "G") -> str:
    """GraphML 1.0: integer ``weight`` on edges, optional ``community``/``highlight`` on nodes."""
    node_attributes = node_attributes or {}
    root = ET.Element("graphml", {"xmlns": _GRAPHML_NS})
    keys = {}
    used = {k for attrs in node_attributes.values() for k in attrs}
    for name, typ in (("community", "int"), ("highlight", "boolean")):
        if name in used:
            keys[name] = f"d_{name}"
            ET.SubElement(root, "key", {"id": keys[name], "for": "node", "attr.name": name, "attr.type": typ})
    ET.SubElement(root, "key", {"id": "d_weight", "for": "edge", "attr.name": "weight", "attr.type": "int"})
    graph = ET.SubElement(root, "graph", {"id": graph_id, "edgedefault": "undirected"})
    for v in g.nodes:
        node = ET.SubElement(graph, "node", {"id": v})
        for k, val in node_attributes.get(v, {}).items():
            if k in keys:
                ET.SubElement(node, "data", {"key": keys[k]}).text = str(_cell(val))
    for (a, b), w in g.edges.items():
        edge = ET.SubElement(graph, "edge", {"source": a, "target": b})
        ET.SubElement(edge, "data", {"key": "d_weight"}).text = str(w)
    ET.indent(root)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(root, encoding="unicode") + "\n"


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def penwidth(weight: int) -> float:
    return round(1.0 + math.log2(weight), 3)


def graph_to_dot(g: CoocGraph, node_attributes: Mapping[str, Mapping] | None = None,
                 name: str = "cooccurrence") -> str:
    node_attributes = node_attributes or {}
    lines = [f"graph {_dot_id(name)} {{"]
    for v in g.nodes:
        attrs = node_attributes.get(v, {})
        parts = []
        if "community" in attrs:
            parts.append(f"community={attrs['community']}")
        if "highlight" in attrs:
            parts.append(f"highlight={'true' if attrs['highlight'] else 'false'}")
            if attrs["highlight"]:
                parts.append('style=filled, fillcolor="gold"')
        lines.append(f"  {_dot_id(v)}" + (f" [{', '.join(parts)}]" if parts else "") + ";")
    for (a, b), w in g.edges.items():
        lines.append(f"  {_dot_id(a)} -- {_dot_id(b)} [weight={w}, penwidth={penwidth(w)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_graph(g: CoocGraph, fmt: str, node_attributes: Mapping[str, Mapping] | None = None,
                 name: str = "G") -> str:
    if fmt == "json":
        return graph_to_json(g, node_attributes)
    if fmt == "csv":
        return graph_to_edge_csv(g)
    if fmt == "graphml":
        return graph_to_graphml(g, node_attributes, graph_id=name)
    if fmt == "dot":
        return graph_to_dot(g, node_attributes, name=name)
    raise ValueError(f"unknown graph format {fmt!r}; choose from {', '.join(GRAPH_FORMATS)}")
