from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dotscore.dot_parser import parse_dot
from dotscore.legal_graph import (
    EdgeKind,
    NodeKind,
    NormalizeError,
    classify_edge,
    classify_node,
    from_ast,
    render_dot,
    to_canonical_dict,
)
from dotscore.synth import SynthConfig, random_legal_graph


def normalize(src: str):
    return from_ast(parse_dot(src))


class TestClassifyNode:
    @pytest.mark.parametrize(
        "shape,kind",
        [
            ("doubleoctagon", NodeKind.ENTITY),
            ("trapezium", NodeKind.SOURCE),
            ("ellipse", NodeKind.DECEASED),
            ("square", NodeKind.STATEMENT),
            ("box", NodeKind.STATEMENT),
            ("rect", NodeKind.STATEMENT),
            ("rectangle", NodeKind.STATEMENT),
            ("plaintext", NodeKind.STATEMENT),
            ("none", NodeKind.STATEMENT),
            (None, NodeKind.STATEMENT),
            ("diamond", NodeKind.OTHER),
            ("star", NodeKind.OTHER),
        ],
    )
    def test_shape_table(self, shape, kind):
        assert classify_node(shape) is kind

    def test_case_and_whitespace_insensitive(self):
        assert classify_node("DoubleOctagon") is NodeKind.ENTITY
        assert classify_node("  Box ") is NodeKind.STATEMENT


class TestClassifyEdge:
    @pytest.mark.parametrize(
        "style,dir_attr,graph_directed,expected",
        [
            (None, None, True, (True, "solid", EdgeKind.TRANSACTION)),
            (None, "none", True, (False, "solid", EdgeKind.EQUIVALENCE)),
            (None, "NONE", True, (False, "solid", EdgeKind.EQUIVALENCE)),
            (None, None, False, (False, "solid", EdgeKind.EQUIVALENCE)),
            ("dotted", None, True, (True, "dotted", EdgeKind.SUCCESSION)),
            ("dotted", "none", True, (False, "dotted", EdgeKind.SUCCESSION)),
            ("bold", "none", True, (False, "bold", EdgeKind.FAMILY)),
            ("bold", None, False, (False, "bold", EdgeKind.FAMILY)),
            ("bold", None, True, (True, "bold", EdgeKind.TRANSACTION)),
            ("dashed", None, True, (True, "dashed", EdgeKind.UNEXERCISABLE)),
            ("dashed", "none", True, (False, "dashed", EdgeKind.UNEXERCISABLE)),
            ("wavy", None, True, (True, "solid", EdgeKind.TRANSACTION)),
            ("Dotted", None, True, (True, "dotted", EdgeKind.SUCCESSION)),
            (None, "forward", True, (True, "solid", EdgeKind.TRANSACTION)),
        ],
    )
    def test_style_dir_table(self, style, dir_attr, graph_directed, expected):
        assert classify_edge(style, dir_attr, graph_directed) == expected


class TestNormalization:
    def test_falcone_reference_graph(self, falcone_source):
        graph = normalize(falcone_source)
        assert graph.directed
        assert [n.id for n in graph.nodes] == [
            "Nicoletta Falcone",
            "M. Condinanzi",
            "The Comission of the European Comminities",
        ]
        assert all(n.kind is NodeKind.STATEMENT for n in graph.nodes)
        assert all(n.raw_shape == "box" for n in graph.nodes)
        assert all(n.text == n.id for n in graph.nodes)
        assert len(graph.edges) == 2
        first, second = graph.edges
        assert (first.src, first.dst) == ("Nicoletta Falcone", "M. Condinanzi")
        assert first.label == "represent"
        assert not first.directed and first.kind is EdgeKind.EQUIVALENCE
        assert second.directed and second.kind is EdgeKind.TRANSACTION
        assert second.label.startswith("application for annulment")

    def test_label_overrides_id_as_text(self):
        graph = normalize('digraph { a [label="display text"]; }')
        assert graph.nodes[0].id == "a"
        assert graph.nodes[0].text == "display text"

    def test_attr_keys_are_case_insensitive(self):
        graph = normalize('digraph { a [LABEL="x" Shape=doubleoctagon]; }')
        assert graph.nodes[0].text == "x"
        assert graph.nodes[0].kind is NodeKind.ENTITY

    def test_duplicate_node_statements_merge_last_wins(self):
        graph = normalize('digraph { a [label="one" shape=box]; b; a [label="two"]; }')
        assert [n.id for n in graph.nodes] == ["a", "b"]
        assert graph.nodes[0].text == "two"
        assert graph.nodes[0].raw_shape == "box"

    def test_defaults_apply_only_to_later_nodes(self):
        graph = normalize("digraph { a; node [shape=doubleoctagon]; b; }")
        assert graph.nodes[0].kind is NodeKind.STATEMENT
        assert graph.nodes[0].raw_shape is None
        assert graph.nodes[1].kind is NodeKind.ENTITY

    def test_node_statement_overrides_default(self):
        graph = normalize("digraph { node [shape=doubleoctagon]; a [shape=trapezium]; }")
        assert graph.nodes[0].kind is NodeKind.SOURCE

    def test_subgraph_defaults_do_not_leak(self):
        graph = normalize(
            "digraph { subgraph s { node [shape=doubleoctagon]; a; } b; }"
        )
        by_id = graph.nodes_by_id()
        assert by_id["a"].kind is NodeKind.ENTITY
        assert by_id["b"].kind is NodeKind.STATEMENT

    def test_subgraph_inherits_outer_defaults(self):
        graph = normalize("digraph { node [shape=trapezium]; subgraph s { a; } }")
        assert graph.nodes[0].kind is NodeKind.SOURCE

    def test_edge_defaults_apply(self):
        graph = normalize('digraph { edge [style=dotted label="d"]; a -> b; }')
        edge = graph.edges[0]
        assert edge.kind is EdgeKind.SUCCESSION
        assert edge.label == "d"

    def test_edge_attrs_override_edge_defaults(self):
        graph = normalize("digraph { edge [style=dotted]; a -> b [style=dashed]; }")
        assert graph.edges[0].kind is EdgeKind.UNEXERCISABLE

    def test_chain_expands_pairwise_with_shared_attrs(self):
        graph = normalize('digraph { a -> b -> c [label="L"]; }')
        assert [(e.src, e.dst) for e in graph.edges] == [("a", "b"), ("b", "c")]
        assert all(e.label == "L" for e in graph.edges)

    def test_parallel_edges_are_kept_in_order(self):
        graph = normalize('digraph { a -> b [label="x"]; a -> b [label="y"]; }')
        assert [e.label for e in graph.edges] == ["x", "y"]

    def test_edge_endpoints_are_auto_created(self):
        graph = normalize("digraph { node [shape=ellipse]; a -> b; }")
        assert [n.id for n in graph.nodes] == ["a", "b"]
        assert all(n.kind is NodeKind.DECEASED for n in graph.nodes)
        assert all(n.text == n.id for n in graph.nodes)

    def test_node_order_is_first_appearance(self):
        graph = normalize("digraph { x -> y; a; y -> a; }")
        assert [n.id for n in graph.nodes] == ["x", "y", "a"]

    def test_empty_label_raises(self):
        with pytest.raises(NormalizeError) as exc_info:
            normalize('digraph { a [label=""]; }')
        assert exc_info.value.node_id == "a"

    def test_whitespace_only_label_is_kept(self):
        # blank-vs-blank handling happens at scoring time, not here
        graph = normalize('digraph { a [label=" "]; }')
        assert graph.nodes[0].text == " "

    def test_missing_edge_label_is_blank(self):
        graph = normalize("digraph { a -> b; }")
        assert graph.edges[0].label == ""

    def test_undirected_graph_edges(self):
        graph = normalize('graph { a -- b [label="tie"]; }')
        assert not graph.directed
        edge = graph.edges[0]
        assert not edge.directed and edge.kind is EdgeKind.EQUIVALENCE


class TestRenderDot:
    def test_round_trip_specific(self):
        src = (
            "digraph {\n"
            '    a [label="A text" shape=doubleoctagon];\n'
            "    b [shape=trapezium];\n"
            '    a -> b [label="cites" style=dotted];\n'
            '    a -> b [dir=none];\n'
            "}\n"
        )
        graph = normalize(src)
        assert from_ast(parse_dot(render_dot(graph))) == graph

    @given(st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=200, deadline=None)
    def test_round_trip_random(self, seed):
        graph = random_legal_graph(random.Random(seed), SynthConfig())
        assert from_ast(parse_dot(render_dot(graph))) == graph


class TestCanonicalDict:
    def test_shape(self):
        graph = normalize('digraph { a [shape=doubleoctagon]; a -> b [label="x"]; }')
        doc = to_canonical_dict(graph)
        assert doc == {
            "directed": True,
            "nodes": [
                {"id": "a", "text": "a", "kind": "entity", "shape": "doubleoctagon"},
                {"id": "b", "text": "b", "kind": "statement", "shape": None},
            ],
            "edges": [
                {
                    "src": "a",
                    "dst": "b",
                    "label": "x",
                    "directed": True,
                    "style": "solid",
                    "kind": "transaction",
                }
            ],
        }
