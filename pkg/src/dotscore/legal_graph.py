"""Normalization of a DOT AST into the legal-diagram graph model.

Default attributes are applied in lexical scope order, subgraphs are
flattened, edge chains are expanded pairwise and every node/edge is
classified into its legal kind from the resolved ``shape``/``style``/``dir``
attributes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .dot_parser import Attr, DefaultStmt, DotAst, EdgeStmt, NodeStmt, Statement, Subgraph


class NodeKind(enum.Enum):
    ENTITY = "entity"
    SOURCE = "source"
    STATEMENT = "statement"
    DECEASED = "deceased"
    OTHER = "other"


class EdgeKind(enum.Enum):
    TRANSACTION = "transaction"
    EQUIVALENCE = "equivalence"
    SUCCESSION = "succession"
    FAMILY = "family"
    UNEXERCISABLE = "unexercisable"


EDGE_STYLES = ("solid", "dotted", "dashed", "bold")

# shape attribute -> node kind; any shape not listed here maps to OTHER
_SHAPE_KINDS = {
    "doubleoctagon": NodeKind.ENTITY,
    "trapezium": NodeKind.SOURCE,
    "ellipse": NodeKind.DECEASED,
    "square": NodeKind.STATEMENT,
    "box": NodeKind.STATEMENT,
    "rect": NodeKind.STATEMENT,
    "rectangle": NodeKind.STATEMENT,
    "plaintext": NodeKind.STATEMENT,
    "none": NodeKind.STATEMENT,
}


class NormalizeError(Exception):
    """AST is syntactically fine but not a legal diagram (e.g. empty node text)."""

    def __init__(self, message: str, node_id: Optional[str] = None):
        super().__init__(message)
        self.node_id = node_id


@dataclass(frozen=True)
class LegalNode:
    id: str
    text: str  # label attribute if present, else the id
    kind: NodeKind
    raw_shape: Optional[str] = None


@dataclass(frozen=True)
class LegalEdge:
    src: str
    dst: str
    label: str  # may be blank
    directed: bool
    style: str
    kind: EdgeKind


@dataclass(frozen=True)
class LegalGraph:
    directed: bool
    nodes: tuple[LegalNode, ...]
    edges: tuple[LegalEdge, ...]

    def node_texts(self) -> list[str]:
        return [n.text for n in self.nodes]

    def nodes_by_id(self) -> dict[str, LegalNode]:
        return {n.id: n for n in self.nodes}


def classify_node(shape: Optional[str]) -> NodeKind:
    """Map a resolved ``shape`` attribute (or its absence) to a node kind."""
    if shape is None:
        return NodeKind.STATEMENT
    return _SHAPE_KINDS.get(shape.strip().lower(), NodeKind.OTHER)


def classify_edge(
    style: Optional[str], dir_attr: Optional[str], graph_directed: bool
) -> tuple[bool, str, EdgeKind]:
    """Resolve (directed, style, kind) for an edge from its attributes.

    An edge is directed only in a digraph without ``dir=none``; unknown styles
    fall back to solid.
    """
    directed = graph_directed and (dir_attr is None or dir_attr.strip().lower() != "none")
    style_norm = (style or "solid").strip().lower()
    if style_norm not in EDGE_STYLES:
        style_norm = "solid"
    if style_norm == "dotted":
        kind = EdgeKind.SUCCESSION
    elif style_norm == "bold" and not directed:
        kind = EdgeKind.FAMILY
    elif style_norm == "dashed":
        kind = EdgeKind.UNEXERCISABLE
    elif not directed:
        kind = EdgeKind.EQUIVALENCE
    else:
        kind = EdgeKind.TRANSACTION
    return directed, style_norm, kind


def _merge(attrs: dict[str, str], new: tuple[Attr, ...]) -> None:
    for attr in new:
        attrs[attr.key.lower()] = attr.value


def from_ast(ast: DotAst) -> LegalGraph:
    """Normalize an AST into a `LegalGraph`; raise `NormalizeError` when a
    node's resolved display text is empty."""
    node_attrs: dict[str, dict[str, str]] = {}
    node_order: list[str] = []
    edges: list[dict[str, str]] = []
    edge_attr_maps: list[dict[str, str]] = []

    def ensure_node(node_id: str, defaults: dict[str, str]) -> dict[str, str]:
        attrs = node_attrs.get(node_id)
        if attrs is None:
            attrs = dict(defaults)
            node_attrs[node_id] = attrs
            node_order.append(node_id)
        return attrs

    def walk(stmts: tuple[Statement, ...], node_defaults: dict[str, str], edge_defaults: dict[str, str]) -> None:
        for stmt in stmts:
            if isinstance(stmt, DefaultStmt):
                if stmt.target == "node":
                    _merge(node_defaults, stmt.attrs)
                elif stmt.target == "edge":
                    _merge(edge_defaults, stmt.attrs)
                # graph-level attributes (rankdir, ...) carry no legal meaning
            elif isinstance(stmt, NodeStmt):
                attrs = ensure_node(stmt.id, node_defaults)
                _merge(attrs, stmt.attrs)
            elif isinstance(stmt, EdgeStmt):
                for endpoint in stmt.endpoints:
                    ensure_node(endpoint, node_defaults)
                for src, dst in zip(stmt.endpoints, stmt.endpoints[1:]):
                    attrs = dict(edge_defaults)
                    _merge(attrs, stmt.attrs)
                    edges.append({"src": src, "dst": dst})
                    edge_attr_maps.append(attrs)
            else:
                assert isinstance(stmt, Subgraph)
                walk(stmt.statements, dict(node_defaults), dict(edge_defaults))

    walk(ast.statements, {}, {})

    nodes: list[LegalNode] = []
    for node_id in node_order:
        attrs = node_attrs[node_id]
        text = attrs.get("label", node_id)
        if text == "":
            raise NormalizeError(f"node {node_id!r} has empty display text", node_id)
        shape = attrs.get("shape")
        nodes.append(LegalNode(id=node_id, text=text, kind=classify_node(shape), raw_shape=shape))

    legal_edges: list[LegalEdge] = []
    for ends, attrs in zip(edges, edge_attr_maps):
        directed, style, kind = classify_edge(attrs.get("style"), attrs.get("dir"), ast.directed)
        legal_edges.append(
            LegalEdge(
                src=ends["src"],
                dst=ends["dst"],
                label=attrs.get("label", ""),
                directed=directed,
                style=style,
                kind=kind,
            )
        )

    return LegalGraph(directed=ast.directed, nodes=tuple(nodes), edges=tuple(legal_edges))


def render_dot(graph: LegalGraph) -> str:
    """Render a LegalGraph back to DOT text; from_ast(parse_dot(render_dot(g)))
    reproduces g exactly (attributes are emitted only where they differ from
    the normalization defaults)."""
    from .dot_parser import _render_id as rid  # same quoting rules as the serializer

    op = "->" if graph.directed else "--"
    lines = ["digraph {" if graph.directed else "graph {"]
    for node in graph.nodes:
        attrs = []
        if node.text != node.id:
            attrs.append(f"label={rid(node.text)}")
        if node.raw_shape is not None:
            attrs.append(f"shape={rid(node.raw_shape)}")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"    {rid(node.id)}{suffix};")
    for edge in graph.edges:
        attrs = []
        if edge.label:
            attrs.append(f"label={rid(edge.label)}")
        if edge.style != "solid":
            attrs.append(f"style={rid(edge.style)}")
        if graph.directed and not edge.directed:
            attrs.append("dir=none")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"    {rid(edge.src)} {op} {rid(edge.dst)}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_canonical_dict(graph: LegalGraph) -> dict:
    """Stable JSON-friendly form of a graph, used by golden tests and the
    ``dotscore graph`` debug command (schema in docs/report-schema.md)."""
    return {
        "directed": graph.directed,
        "nodes": [
            {"id": n.id, "text": n.text, "kind": n.kind.value, "shape": n.raw_shape}
            for n in graph.nodes
        ],
        "edges": [
            {
                "src": e.src,
                "dst": e.dst,
                "label": e.label,
                "directed": e.directed,
                "style": e.style,
                "kind": e.kind.value,
            }
            for e in graph.edges
        ],
    }
