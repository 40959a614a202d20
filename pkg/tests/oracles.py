"""Independent reference implementations used to derive expected values.

Everything here is deliberately brute force: token counting with plain
dicts, assignment by permutation enumeration, edge matching by exhaustive
subset search, metric sums as exact rationals.  Tests compare the library
against these, never the library against itself.
"""

from __future__ import annotations

import itertools
import math
import unicodedata
from fractions import Fraction

from dotscore.legal_graph import LegalGraph, NodeKind

TOL = 1e-9


# --- similarity ---------------------------------------------------------


def oracle_tokens(text: str) -> list[str]:
    chars = []
    for ch in text.lower():
        if unicodedata.category(ch).startswith("P"):
            chars.append(" ")
        else:
            chars.append(ch)
    return "".join(chars).split()


def oracle_token_f1(a: str, b: str) -> float:
    ta, tb = oracle_tokens(a), oracle_tokens(b)
    counts: dict[str, int] = {}
    for tok in ta:
        counts[tok] = counts.get(tok, 0) + 1
    overlap = 0
    for tok in tb:
        if counts.get(tok, 0) > 0:
            counts[tok] -= 1
            overlap += 1
    total = len(ta) + len(tb)
    if total == 0:
        return 1.0
    return 2.0 * overlap / total


def oracle_sim(a: str, b: str) -> float:
    """Blank convention applied around the token scorer."""
    a_blank = a.strip() == ""
    b_blank = b.strip() == ""
    if a_blank or b_blank:
        return 1.0 if (a_blank and b_blank) else 0.0
    return oracle_token_f1(a, b)


# --- assignment ----------------------------------------------------------


def _full_mappings(n_rows: int, n_cols: int):
    """Every maximal injective row->col mapping as a tuple of (row, col)."""
    if n_rows <= n_cols:
        for cols in itertools.permutations(range(n_cols), n_rows):
            yield tuple(zip(range(n_rows), cols))
    else:
        for rows in itertools.permutations(range(n_rows), n_cols):
            yield tuple(sorted(zip(rows, range(n_cols))))


def oracle_best_assignment_total(weights) -> float:
    n_rows = len(weights)
    n_cols = len(weights[0]) if n_rows else 0
    best = 0.0
    for mapping in _full_mappings(n_rows, n_cols):
        total = math.fsum(weights[i][j] for i, j in mapping)
        best = max(best, total)
    return best


def oracle_lexmin_assignment(weights) -> list[tuple[int, int]]:
    """Positive-weight pairs of the lexicographically smallest mapping among
    those within TOL of the optimum (mirrors the documented tie-break)."""
    n_rows = len(weights)
    n_cols = len(weights[0]) if n_rows else 0
    if n_rows == 0 or n_cols == 0:
        return []
    best = oracle_best_assignment_total(weights)
    if best <= 0.0:
        return []
    winner = None
    for mapping in _full_mappings(n_rows, n_cols):
        total = math.fsum(weights[i][j] for i, j in mapping)
        if total < best - TOL:
            continue
        filtered = tuple(sorted((i, j) for i, j in mapping if weights[i][j] > 0.0))
        if winner is None or filtered < winner:
            winner = filtered
    return list(winner or ())


# --- graph scoring -------------------------------------------------------


def oracle_content_key(graph: LegalGraph):
    index = {n.id: i for i, n in enumerate(graph.nodes)}
    return (
        tuple((n.text, n.kind.value) for n in graph.nodes),
        tuple(
            (index[e.src], index[e.dst], e.label, e.directed, e.style)
            for e in graph.edges
        ),
        graph.directed,
    )


def oracle_node_alignment(ref: LegalGraph, hyp: LegalGraph) -> list[tuple[int, int, float]]:
    """(hyp index, ref index, similarity) pairs under the canonical
    orientation and lexicographic tie-break."""
    if not ref.nodes or not hyp.nodes:
        return []
    hyp_major = oracle_content_key(hyp) <= oracle_content_key(ref)
    row_nodes, col_nodes = (hyp.nodes, ref.nodes) if hyp_major else (ref.nodes, hyp.nodes)
    weights = [[oracle_sim(a.text, b.text) for b in col_nodes] for a in row_nodes]
    out = []
    for i, j in oracle_lexmin_assignment(weights):
        h, r = (i, j) if hyp_major else (j, i)
        out.append((h, r, weights[i][j]))
    out.sort()
    return out


def oracle_compatible_pairs(ref: LegalGraph, hyp: LegalGraph, alignment) -> list[tuple[int, int, bool, float]]:
    mapping = {hyp.nodes[h].id: ref.nodes[r].id for h, r, _ in alignment}
    out = []
    for h_idx, eh in enumerate(hyp.edges):
        src, dst = mapping.get(eh.src), mapping.get(eh.dst)
        if src is None or dst is None:
            continue
        for r_idx, er in enumerate(ref.edges):
            forward = src == er.src and dst == er.dst
            backward = src == er.dst and dst == er.src
            if eh.directed and er.directed:
                if forward:
                    out.append((h_idx, r_idx, False, oracle_sim(eh.label, er.label)))
            elif forward:
                out.append((h_idx, r_idx, False, oracle_sim(eh.label, er.label)))
            elif backward:
                out.append((h_idx, r_idx, True, oracle_sim(eh.label, er.label)))
    return out


def oracle_edge_match(ref: LegalGraph, hyp: LegalGraph, alignment) -> list[tuple[int, int, bool, float]]:
    """Exhaustive max-cardinality / max-label-sim / lexmin one-to-one
    matching over the compatible pairs, in canonical orientation."""
    pairs = oracle_compatible_pairs(ref, hyp, alignment)
    if not pairs:
        return []
    hyp_major = oracle_content_key(hyp) <= oracle_content_key(ref)
    info = {}
    by_row: dict[int, list[int]] = {}
    for h, r, sw, sim in pairs:
        i, j = (h, r) if hyp_major else (r, h)
        info[(i, j)] = (sw, sim)
        by_row.setdefault(i, []).append(j)
    rows = sorted(by_row)

    best: list[tuple[int, float, tuple]] = [(-1, 0.0, ())]

    def search(idx: int, used: set, chosen: list) -> None:
        if idx == len(rows):
            card = len(chosen)
            total = math.fsum(info[p][1] for p in chosen)
            best.append((card, total, tuple(sorted(chosen))))
            return
        row = rows[idx]
        search(idx + 1, used, chosen)  # leave row unmatched
        for col in by_row[row]:
            if col not in used:
                chosen.append((row, col))
                used.add(col)
                search(idx + 1, used, chosen)
                used.remove(col)
                chosen.pop()

    search(0, set(), [])
    max_card = max(b[0] for b in best)
    in_card = [b for b in best if b[0] == max_card]
    max_total = max(b[1] for b in in_card)
    winners = [b[2] for b in in_card if b[1] >= max_total - TOL]
    chosen = min(winners)
    out = []
    for i, j in chosen:
        h, r = (i, j) if hyp_major else (j, i)
        sw, sim = info[(i, j)]
        out.append((h, r, sw, sim))
    out.sort()
    return out


def _f1(tp: Fraction, hyp_total: int, ref_total: int) -> float:
    denom = Fraction(hyp_total + ref_total)
    if denom == 0:
        return 1.0
    return float(2 * tp / denom)


def oracle_graph_metrics(
    ref: LegalGraph,
    hyp: LegalGraph,
    *,
    deceased_as_entity: bool = False,
    literal_sum: bool = False,
) -> dict[str, tuple[float, float, float, float]]:
    """All seven metrics as (tp, fp, fn, f1), computed with exact rational
    sums over the oracle alignment and matching."""
    alignment = oracle_node_alignment(ref, hyp)
    matched = (
        oracle_compatible_pairs(ref, hyp, alignment)
        if literal_sum
        else oracle_edge_match(ref, hyp, alignment)
    )
    node_sim = {hyp.nodes[h].id: Fraction(s) for h, r, s in alignment}
    n_hyp_edges, n_ref_edges = len(hyp.edges), len(ref.edges)

    tp_graph = Fraction(len(matched))
    products = []
    for h, r, sw, label_sim in matched:
        edge = hyp.edges[h]
        products.append(node_sim[edge.src] * node_sim[edge.dst])
    tp_gn = sum(products, Fraction(0))
    tp_gne = sum(
        (p * Fraction(m[3]) for p, m in zip(products, matched)), Fraction(0)
    )
    tp_rel = sum((Fraction(m[3]) for m in matched), Fraction(0))

    def edge_metric(tp: Fraction):
        return (
            float(tp),
            float(n_hyp_edges - tp),
            float(n_ref_edges - tp),
            _f1(tp, n_hyp_edges, n_ref_edges),
        )

    def content_metric(kind: NodeKind):
        def eligible(k: NodeKind) -> bool:
            if k == kind:
                return True
            return deceased_as_entity and kind == NodeKind.ENTITY and k == NodeKind.DECEASED

        hyp_kinds = {n.id: n.kind for n in hyp.nodes}
        ref_kinds = {n.id: n.kind for n in ref.nodes}
        n_h = sum(1 for n in hyp.nodes if eligible(n.kind))
        n_r = sum(1 for n in ref.nodes if eligible(n.kind))
        tp = sum(
            (
                Fraction(s)
                for h, r, s in alignment
                if eligible(hyp_kinds[hyp.nodes[h].id]) and eligible(ref_kinds[ref.nodes[r].id])
            ),
            Fraction(0),
        )
        return (float(tp), float(n_h - tp), float(n_r - tp), _f1(tp, n_h, n_r))

    return {
        "graph": edge_metric(tp_graph),
        "graph_node": edge_metric(tp_gn),
        "graph_node_edge": edge_metric(tp_gne),
        "entity": content_metric(NodeKind.ENTITY),
        "relations": edge_metric(tp_rel),
        "source": content_metric(NodeKind.SOURCE),
        "statement": content_metric(NodeKind.STATEMENT),
    }


def oracle_micro_f1(counts: list[tuple[float, float, float]]) -> float:
    """Micro aggregation: sum counts exactly, then one F1."""
    tp = sum((Fraction(c[0]) for c in counts), Fraction(0))
    fp = sum((Fraction(c[1]) for c in counts), Fraction(0))
    fn = sum((Fraction(c[2]) for c in counts), Fraction(0))
    denom = 2 * tp + fp + fn
    if denom == 0:
        return 1.0
    return float(2 * tp / denom)
