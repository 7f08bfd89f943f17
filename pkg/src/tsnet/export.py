"""Network export to edge-list CSV, GraphML and Graphviz DOT, plus readers."""
from __future__ import annotations

import csv
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Optional

from .errors import InputError
from .graphalg import Partition
from .io import fmt
from .netbuild import Network
from .temporal import EdgeDiff

FORMATS = {"edgelist-csv": "csv", "graphml": "graphml", "dot": "dot"}
SHAPES = {"classification": "triangle", "island": "circle", "metier": "square"}
STATUS_COLORS = {"new": "red", "retained": "black"}

GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


def _edge_rows(net: Network):
    """Edges as ``(source, target, weight)`` with source/target in label order."""
    rows = []
    for u, v in net.sorted_edges():
        a, b = sorted((net.labels[u], net.labels[v]))
        w = net.weights[(u, v)] if net.weighted else 1.0
        rows.append((a, b, w))
    rows.sort()
    return rows


def _status(diff: Optional[EdgeDiff], a: str, b: str) -> Optional[str]:
    if diff is None:
        return None
    return "new" if (a, b) in diff.new else "retained"


def write_edgelist(net: Network, path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["source", "target", "weight"])
        for a, b, wt in _edge_rows(net):
            w.writerow([a, b, fmt(wt)])


def read_edgelist(path) -> list[tuple[str, str, float]]:
    with Path(path).open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["source", "target", "weight"]:
            raise InputError(f"{path}: expected header 'source,target,weight'")
        return [(r[0], r[1], float(r[2])) for r in reader if r]


def write_graphml(
    net: Network, path, partition: Optional[Partition] = None, diff: Optional[EdgeDiff] = None
) -> None:
    ET.register_namespace("", GRAPHML_NS)
    root = ET.Element(f"{{{GRAPHML_NS}}}graphml")
    keys = [("kind", "node", "string"), ("community", "node", "int"), ("weight", "edge", "double")]
    if diff is not None:
        keys.append(("status", "edge", "string"))
    for name, domain, typ in keys:
        ET.SubElement(
            root,
            f"{{{GRAPHML_NS}}}key",
            {"id": name, "for": domain, "attr.name": name, "attr.type": typ},
        )
    g = ET.SubElement(root, f"{{{GRAPHML_NS}}}graph", {"id": "G", "edgedefault": "undirected"})
    for i, (lab, kind) in enumerate(zip(net.labels, net.kinds)):
        node = ET.SubElement(g, f"{{{GRAPHML_NS}}}node", {"id": lab})
        ET.SubElement(node, f"{{{GRAPHML_NS}}}data", {"key": "kind"}).text = kind
        if partition is not None:
            ET.SubElement(node, f"{{{GRAPHML_NS}}}data", {"key": "community"}).text = str(
                partition.membership[i]
            )
    for a, b, wt in _edge_rows(net):
        edge = ET.SubElement(g, f"{{{GRAPHML_NS}}}edge", {"source": a, "target": b})
        ET.SubElement(edge, f"{{{GRAPHML_NS}}}data", {"key": "weight"}).text = fmt(wt)
        status = _status(diff, a, b)
        if status:
            ET.SubElement(edge, f"{{{GRAPHML_NS}}}data", {"key": "status"}).text = status
    ET.indent(root)
    ET.ElementTree(root).write(path, encoding="utf-8", xml_declaration=True)


def read_graphml(path) -> tuple[Network, dict[str, int], dict[tuple[str, str], str]]:
    """Read a GraphML file written by :func:`write_graphml`.

    Returns the network (weighted if any weight differs from 1), the community
    per node label and the status per edge.
    """
    ns = {"g": GRAPHML_NS}
    g = ET.parse(path).getroot().find("g:graph", ns)
    if g is None:
        raise InputError(f"{path}: no <graph> element")
    labels, kinds, community = [], [], {}
    for node in g.findall("g:node", ns):
        lab = node.get("id")
        labels.append(lab)
        data = {d.get("key"): d.text for d in node.findall("g:data", ns)}
        kinds.append(data.get("kind"))
        if "community" in data:
            community[lab] = int(data["community"])
    edges, weights, status = [], {}, {}
    for edge in g.findall("g:edge", ns):
        a, b = edge.get("source"), edge.get("target")
        data = {d.get("key"): d.text for d in edge.findall("g:data", ns)}
        edges.append((a, b))
        weights[(a, b)] = float(data.get("weight", 1.0))
        if "status" in data:
            status[tuple(sorted((a, b)))] = data["status"]
    weighted = any(w != 1.0 for w in weights.values())
    net = Network.from_label_edges(labels, kinds, edges, weights if weighted else None)
    return net, community, status


def _q(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def write_dot(
    net: Network, path, partition: Optional[Partition] = None, diff: Optional[EdgeDiff] = None
) -> None:
    lines = ["graph G {", "  node [style=filled, colorscheme=set312];"]
    for i, (lab, kind) in enumerate(zip(net.labels, net.kinds)):
        attrs = [f"shape={SHAPES.get(kind, 'ellipse')}", f"kind={_q(kind)}"]
        if partition is not None:
            c = partition.membership[i]
            attrs += [f"community={c}", f"fillcolor={c % 12 + 1}"]
        lines.append(f"  {_q(lab)} [{', '.join(attrs)}];")
    for a, b, wt in _edge_rows(net):
        attrs = []
        if net.weighted:
            attrs.append(f"weight={fmt(wt)}")
        status = _status(diff, a, b)
        if status:
            attrs += [f"status={status}", f"color={STATUS_COLORS[status]}"]
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_q(a)} -- {_q(b)}{suffix};")
    lines.append("}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def export_network(
    net: Network,
    fmt_name: str,
    path,
    diff: Optional[EdgeDiff] = None,
    partition: Optional[Partition] = None,
) -> Path:
    """Write ``net`` in one of ``edgelist-csv``, ``graphml`` or ``dot``."""
    path = Path(path)
    if fmt_name == "edgelist-csv":
        write_edgelist(net, path)
    elif fmt_name == "graphml":
        write_graphml(net, path, partition, diff)
    elif fmt_name == "dot":
        write_dot(net, path, partition, diff)
    else:
        raise InputError(f"unknown export format {fmt_name!r}; expected one of {sorted(FORMATS)}")
    return path
