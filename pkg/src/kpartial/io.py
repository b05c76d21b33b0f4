"""File formats: edge-list text, JSON graphs and colorings, DOT export."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from kpartial.coloring import Coloring
from kpartial.graph import Graph, GraphError, build_graph
from kpartial.ids import label_from_json, label_to_json

PathLike = Union[str, Path]


def to_edge_list(G: Graph) -> str:
    lines = [f"{G.n} {G.m}"]
    lines.extend(f"{u} {v}" for u, v in G.edges)
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows:
        raise GraphError("empty edge list")
    n, m = int(rows[0][0]), int(rows[0][1])
    body = rows[1:]
    if len(body) != m:
        raise GraphError(f"header announces {m} edges, found {len(body)}")
    return build_graph(n, [(int(r[0]), int(r[1])) for r in body])


def graph_to_json(G: Graph) -> dict:
    out: dict = {"n": G.n, "edges": [list(e) for e in G.edges]}
    if G.labels is not None:
        out["labels"] = [{"vertex": v, **label_to_json(lab)} for v, lab in enumerate(G.labels)]
    return out


def graph_from_json(obj: dict) -> Graph:
    labels = None
    if obj.get("labels") is not None:
        labels = [None] * obj["n"]
        for entry in obj["labels"]:
            labels[entry["vertex"]] = label_from_json(entry)
        if any(lab is None for lab in labels):
            raise GraphError("labels must cover every vertex")
    return build_graph(obj["n"], obj["edges"], labels)


def coloring_to_json(col: Coloring) -> dict:
    return {"c": col.c, "colors": list(col.colors)}


def coloring_from_json(obj: dict) -> Coloring:
    return Coloring(int(obj["c"]), tuple(int(x) for x in obj["colors"]))


def to_dot(G: Graph, name: str = "G", coloring: Coloring | None = None) -> str:
    lines = [f"graph {name} {{"]
    for v in G.vertices():
        attrs = []
        lab = G.label(v)
        attrs.append(f'label="{lab if lab is not None else v}"')
        if coloring is not None:
            fill = (coloring.colors[v] - 1) % 12 + 1  # set312 has 12 entries
            attrs.append(f"colorscheme=set312, style=filled, fillcolor={fill}")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    lines.extend(f"  {u} -- {v};" for u, v in G.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_graph(path: PathLike) -> Graph:
    """Load a graph, choosing the format from the file content."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return graph_from_json(json.loads(text))
    return from_edge_list(text)


def write_graph(G: Graph, path: PathLike) -> None:
    Path(path).write_text(json.dumps(graph_to_json(G)) + "\n")


def read_coloring(path: PathLike) -> Coloring:
    return coloring_from_json(json.loads(Path(path).read_text()))


def write_coloring(col: Coloring, path: PathLike) -> None:
    Path(path).write_text(json.dumps(coloring_to_json(col)) + "\n")
