"""Seeded generators for synthetic legal diagrams and corpus records.

The test suite and the experiment scripts use these to exercise the full
pipeline without the published dataset: property corpora (self-scoring,
perturbation pairs, invariance checks) and whole synthetic splits.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from . import languages
from .legal_graph import (
    EDGE_STYLES,
    LegalEdge,
    LegalGraph,
    LegalNode,
    classify_edge,
    classify_node,
    render_dot,
)

# texts mix scripts on purpose: the corpus spans 23 languages
_WORDS = (
    "court justice appeal judgment commission regulation article directive "
    "annulment contract damages liability witness statute provision member "
    "state applicant defendant decision order recht gericht klage urteil "
    "tribunal justicia sentencia recurso juge arrêt pourvoi domstol dom "
    "oikeus päätös teisė sprendimas tiesa spriedums kohus otsus bíróság "
    "ítélet qorti sentenza sąd wyrok soud rozsudek súd rozsudok sodišče "
    "sodba curte hotărâre съд решение жалба δικαστήριο απόφαση προσφυγή"
).split()

_SHAPES = (
    "doubleoctagon",
    "trapezium",
    "ellipse",
    "box",
    "square",
    "rect",
    "rectangle",
    "plaintext",
    "none",
    "diamond",
    None,
)

_CATEGORIES = ("EU law", "civil law", "criminal law", "administrative law")


@dataclass(frozen=True)
class SynthConfig:
    min_nodes: int = 1
    max_nodes: int = 8
    max_edges: int = 10
    directed_prob: float = 0.8
    labeled_id_prob: float = 0.55  # node carries a short id + label attr
    blank_edge_label_prob: float = 0.25
    undirected_edge_prob: float = 0.2  # dir=none inside a digraph
    self_loop_prob: float = 0.05


def _words(rng: random.Random, low: int = 1, high: int = 4) -> str:
    return " ".join(rng.choice(_WORDS) for _ in range(rng.randint(low, high)))


def random_legal_graph(rng: random.Random, config: SynthConfig = SynthConfig()) -> LegalGraph:
    directed = rng.random() < config.directed_prob
    n_nodes = rng.randint(config.min_nodes, config.max_nodes)
    nodes: list[LegalNode] = []
    used_ids: set[str] = set()
    for i in range(n_nodes):
        text = _words(rng)
        shape = rng.choice(_SHAPES)
        if rng.random() < config.labeled_id_prob or text in used_ids:
            node_id = f"n{i}"
        else:
            node_id = text
        used_ids.add(node_id)
        nodes.append(
            LegalNode(id=node_id, text=text, kind=classify_node(shape), raw_shape=shape)
        )
    edges: list[LegalEdge] = []
    n_edges = rng.randint(0, config.max_edges) if nodes else 0
    for _ in range(n_edges):
        src = rng.choice(nodes).id
        if rng.random() < config.self_loop_prob or len(nodes) == 1:
            dst = src
        else:
            dst = rng.choice([n for n in nodes if n.id != src]).id
        style_attr = rng.choice((None,) + EDGE_STYLES)
        dir_attr = "none" if directed and rng.random() < config.undirected_edge_prob else None
        edge_directed, style, kind = classify_edge(style_attr, dir_attr, directed)
        label = "" if rng.random() < config.blank_edge_label_prob else _words(rng, 1, 3)
        edges.append(
            LegalEdge(src=src, dst=dst, label=label, directed=edge_directed, style=style, kind=kind)
        )
    return LegalGraph(directed=directed, nodes=tuple(nodes), edges=tuple(edges))


def random_dot(rng: random.Random, config: SynthConfig = SynthConfig()) -> str:
    return render_dot(random_legal_graph(rng, config))


def _rebuild_edge(edge: LegalEdge, graph_directed: bool, **changes) -> LegalEdge:
    src = changes.get("src", edge.src)
    dst = changes.get("dst", edge.dst)
    label = changes.get("label", edge.label)
    style_attr = changes.get("style", edge.style)
    dir_attr = changes.get("dir_attr", None if edge.directed or not graph_directed else "none")
    directed, style, kind = classify_edge(style_attr, dir_attr, graph_directed)
    return LegalEdge(src=src, dst=dst, label=label, directed=directed, style=style, kind=kind)


def drop_random_edge(rng: random.Random, graph: LegalGraph) -> LegalGraph:
    if not graph.edges:
        return graph
    victim = rng.randrange(len(graph.edges))
    edges = tuple(e for i, e in enumerate(graph.edges) if i != victim)
    return LegalGraph(graph.directed, graph.nodes, edges)


def drop_random_node(rng: random.Random, graph: LegalGraph) -> LegalGraph:
    if len(graph.nodes) <= 1:
        return graph
    victim = rng.choice(graph.nodes).id
    nodes = tuple(n for n in graph.nodes if n.id != victim)
    edges = tuple(e for e in graph.edges if e.src != victim and e.dst != victim)
    return LegalGraph(graph.directed, nodes, edges)


def _mutate_text(rng: random.Random, text: str) -> str:
    tokens = text.split()
    if tokens and rng.random() < 0.5:
        tokens[rng.randrange(len(tokens))] = rng.choice(_WORDS)
    else:
        tokens.append(rng.choice(_WORDS))
    return " ".join(tokens)


def perturb_graph(rng: random.Random, graph: LegalGraph, ops: int = 1) -> LegalGraph:
    """Apply random structural/textual mutations; the result is always a
    well-formed graph (possibly equal to the input when no op applies)."""
    for _ in range(ops):
        choice = rng.randrange(8)
        if choice == 0:
            graph = drop_random_edge(rng, graph)
        elif choice == 1:
            graph = drop_random_node(rng, graph)
        elif choice == 2:  # add node
            new = LegalNode(
                id=f"x{rng.randrange(10_000)}",
                text=_words(rng),
                kind=classify_node(shape := rng.choice(_SHAPES)),
                raw_shape=shape,
            )
            if new.id not in {n.id for n in graph.nodes}:
                graph = LegalGraph(graph.directed, graph.nodes + (new,), graph.edges)
        elif choice == 3 and graph.nodes:  # add edge
            src = rng.choice(graph.nodes).id
            dst = rng.choice(graph.nodes).id
            directed, style, kind = classify_edge(rng.choice(EDGE_STYLES), None, graph.directed)
            edge = LegalEdge(src, dst, _words(rng, 1, 2), directed, style, kind)
            graph = LegalGraph(graph.directed, graph.nodes, graph.edges + (edge,))
        elif choice == 4 and graph.nodes:  # rewrite a node text
            idx = rng.randrange(len(graph.nodes))
            nodes = list(graph.nodes)
            node = nodes[idx]
            nodes[idx] = LegalNode(node.id, _mutate_text(rng, node.text), node.kind, node.raw_shape)
            graph = LegalGraph(graph.directed, tuple(nodes), graph.edges)
        elif choice == 5 and graph.nodes:  # reshape a node
            idx = rng.randrange(len(graph.nodes))
            nodes = list(graph.nodes)
            node = nodes[idx]
            shape = rng.choice(_SHAPES)
            nodes[idx] = LegalNode(node.id, node.text, classify_node(shape), shape)
            graph = LegalGraph(graph.directed, tuple(nodes), graph.edges)
        elif choice == 6 and graph.edges:  # relabel an edge
            idx = rng.randrange(len(graph.edges))
            edges = list(graph.edges)
            edge = edges[idx]
            label = "" if rng.random() < 0.2 else _mutate_text(rng, edge.label or _words(rng, 1, 2))
            edges[idx] = _rebuild_edge(edge, graph.directed, label=label)
            graph = LegalGraph(graph.directed, graph.nodes, tuple(edges))
        elif choice == 7 and graph.edges:  # flip an edge
            idx = rng.randrange(len(graph.edges))
            edges = list(graph.edges)
            edge = edges[idx]
            edges[idx] = _rebuild_edge(edge, graph.directed, src=edge.dst, dst=edge.src)
            graph = LegalGraph(graph.directed, graph.nodes, tuple(edges))
    return graph


def rename_node_ids(graph: LegalGraph, prefix: str = "node") -> LegalGraph:
    """Rewrite every node id, keeping display texts fixed; all scores must be
    invariant under this."""
    mapping = {n.id: f"{prefix}{i}" for i, n in enumerate(graph.nodes)}
    nodes = tuple(
        LegalNode(mapping[n.id], n.text, n.kind, n.raw_shape) for n in graph.nodes
    )
    edges = tuple(
        LegalEdge(mapping[e.src], mapping[e.dst], e.label, e.directed, e.style, e.kind)
        for e in graph.edges
    )
    return LegalGraph(graph.directed, nodes, edges)


def synth_record(rng: random.Random, language: languages.Language, idx: int) -> dict:
    year = str(rng.randint(1990, 2023))
    return {
        "ID": str(idx),
        "category": rng.choice(_CATEGORIES),
        "diagram_number": str(rng.randint(1, 40)),
        "case_name": f"Case T-{rng.randint(1, 999)}/{year[2:]}: {_words(rng, 2, 5)}",
        "case_number": f"C{year}/{rng.randint(1, 999):03d}/{rng.randint(1, 99)}",
        "document_url": f"https://example.invalid/doc/{idx}",
        "year": year,
        "text": _words(rng, 20, 60),
        "Graphviz": random_dot(rng),
        "language": language.name,
    }


def synth_split(per_language: int, seed: int = 0) -> list[dict]:
    """A deterministic synthetic split: per_language records for each of the
    23 corpus languages."""
    rng = random.Random(seed)
    rows = []
    for language in languages.LANGUAGES:
        for idx in range(1, per_language + 1):
            rows.append(synth_record(rng, language, idx))
    return rows


def write_jsonl(path: str, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")
