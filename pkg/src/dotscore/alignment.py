"""Bipartite node alignment and edge correspondence.

`align_nodes` solves a maximum-weight assignment over node-text similarities;
`match_edges` then pairs endpoint-compatible edges one-to-one, maximizing
cardinality first and total label similarity second.

Among equally-optimal solutions both functions pick the lexicographically
smallest index pairs, computed in a canonical orientation of the two graphs
(rows come from the graph with the smaller content key).  That makes results
deterministic and exactly transpose-stable under ref/hyp swap for any
symmetric scorer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .legal_graph import LegalGraph
from .similarity import SimilarityEngine, similarity_matrix

WEIGHT_TOLERANCE = 1e-9

# above this many matrix cells the lexicographic refinement (one assignment
# solve per probed pair) is skipped and the raw solver ordering is kept
_REFINE_CELL_LIMIT = 4096


@dataclass(frozen=True)
class AlignedNodePair:
    hyp_index: int
    ref_index: int
    hyp_id: str
    ref_id: str
    similarity: float


@dataclass(frozen=True)
class NodeAlignment:
    """Injective partial map from hypothesis nodes to reference nodes.

    pairs are sorted by hyp_index; nodes absent from pairs are unmatched
    (the null-node assignment).  Every pair has similarity > 0.
    """

    pairs: tuple[AlignedNodePair, ...]
    unmatched_hyp: tuple[str, ...]
    unmatched_ref: tuple[str, ...]

    def total_weight(self) -> float:
        return float(sum(p.similarity for p in self.pairs))

    def by_hyp_id(self) -> dict[str, AlignedNodePair]:
        return {p.hyp_id: p for p in self.pairs}


@dataclass(frozen=True)
class EdgePair:
    """A matched (hypothesis edge, reference edge) pair.

    swapped marks undirected matches whose endpoint correspondence is
    reversed: hyp src aligns to ref dst and vice versa.
    """

    hyp_index: int
    ref_index: int
    swapped: bool
    label_sim: float


@dataclass(frozen=True)
class EdgeMatch:
    """pairs: the selected one-to-one matching (max cardinality, then max
    total label similarity).  compatible: every endpoint-compatible pair,
    kept for the literal-sum scoring mode."""

    pairs: tuple[EdgePair, ...]
    compatible: tuple[EdgePair, ...]


def _content_key(graph: LegalGraph):
    """Orientation key built from graph content only (ids excluded, so id
    renames cannot flip the canonical orientation)."""
    index = {n.id: i for i, n in enumerate(graph.nodes)}
    return (
        tuple((n.text, n.kind.value) for n in graph.nodes),
        tuple(
            (index[e.src], index[e.dst], e.label, e.directed, e.style)
            for e in graph.edges
        ),
        graph.directed,
    )


def _hyp_major(ref: LegalGraph, hyp: LegalGraph) -> bool:
    return _content_key(hyp) <= _content_key(ref)


def _max_weight_total(weights: np.ndarray) -> float:
    if weights.size == 0:
        return 0.0
    rows, cols = linear_sum_assignment(weights, maximize=True)
    return float(weights[rows, cols].sum())


def _lexmin_assignment(weights: np.ndarray) -> list[tuple[int, int]]:
    """Maximum-weight assignment refined to the lexicographically smallest
    (row, col) pair list; cells with weight ≤ 0 are never used.

    Refinement fixes pairs greedily: for each row in order, the smallest
    column whose forced inclusion still attains the optimum (within
    WEIGHT_TOLERANCE) is locked.  A row with no lockable column is provably
    unmatched in some optimal assignment and is skipped.
    """
    n_rows, n_cols = weights.shape
    best = _max_weight_total(weights)
    if best <= 0.0:
        return []
    if weights.size > _REFINE_CELL_LIMIT:
        rows, cols = linear_sum_assignment(weights, maximize=True)
        return [(int(i), int(j)) for i, j in zip(rows, cols) if weights[i, j] > 0.0]

    locked: list[tuple[int, int]] = []
    used_cols: set[int] = set()
    locked_weight = 0.0
    for i in range(n_rows):
        rest_rows = list(range(i + 1, n_rows))
        free_cols = [j for j in range(n_cols) if j not in used_cols]
        for j in free_cols:
            if weights[i, j] <= 0.0:
                continue
            rest_cols = [c for c in free_cols if c != j]
            rest = weights[np.ix_(rest_rows, rest_cols)]
            total = locked_weight + float(weights[i, j]) + _max_weight_total(rest)
            if total >= best - WEIGHT_TOLERANCE:
                locked.append((i, j))
                used_cols.add(j)
                locked_weight += float(weights[i, j])
                break
    return locked


def align_nodes(ref: LegalGraph, hyp: LegalGraph, engine: SimilarityEngine) -> NodeAlignment:
    """Maximum-weight bipartite node alignment over display-text similarity.

    Pairs with similarity ≤ 0 map to the null node instead; ties are broken
    toward the smallest order indices in the canonical orientation.
    """
    if not ref.nodes or not hyp.nodes:
        return NodeAlignment(
            pairs=(),
            unmatched_hyp=tuple(n.id for n in hyp.nodes),
            unmatched_ref=tuple(n.id for n in ref.nodes),
        )
    hyp_major = _hyp_major(ref, hyp)
    row_graph, col_graph = (hyp, ref) if hyp_major else (ref, hyp)
    weights = similarity_matrix(
        engine,
        [n.text for n in row_graph.nodes],
        [n.text for n in col_graph.nodes],
    )
    pairs = []
    for i, j in _lexmin_assignment(weights):
        h, r = (i, j) if hyp_major else (j, i)
        pairs.append(
            AlignedNodePair(
                hyp_index=h,
                ref_index=r,
                hyp_id=hyp.nodes[h].id,
                ref_id=ref.nodes[r].id,
                similarity=float(weights[i, j]),
            )
        )
    pairs.sort(key=lambda p: p.hyp_index)
    matched_h = {p.hyp_index for p in pairs}
    matched_r = {p.ref_index for p in pairs}
    return NodeAlignment(
        pairs=tuple(pairs),
        unmatched_hyp=tuple(n.id for i, n in enumerate(hyp.nodes) if i not in matched_h),
        unmatched_ref=tuple(n.id for i, n in enumerate(ref.nodes) if i not in matched_r),
    )


def _compatible_pairs(
    ref: LegalGraph, hyp: LegalGraph, align: NodeAlignment
) -> list[tuple[int, int, bool]]:
    """All (hyp edge, ref edge, swapped) pairs whose endpoints correspond
    under the alignment.  Directed-directed pairs must agree in orientation;
    once either edge is undirected the unordered endpoint sets may match,
    preferring the forward reading when both hold."""
    mapping = {p.hyp_id: p.ref_id for p in align.pairs}
    out: list[tuple[int, int, bool]] = []
    for h_idx, eh in enumerate(hyp.edges):
        src = mapping.get(eh.src)
        dst = mapping.get(eh.dst)
        if src is None or dst is None:
            continue
        for r_idx, er in enumerate(ref.edges):
            forward = src == er.src and dst == er.dst
            if eh.directed and er.directed:
                if forward:
                    out.append((h_idx, r_idx, False))
            elif forward:
                out.append((h_idx, r_idx, False))
            elif src == er.dst and dst == er.src:
                out.append((h_idx, r_idx, True))
    return out


def match_edges(
    ref: LegalGraph, hyp: LegalGraph, align: NodeAlignment, engine: SimilarityEngine
) -> EdgeMatch:
    """One-to-one edge matching over the endpoint-compatible pairs.

    Cardinality dominates label similarity via a constant boost larger than
    any attainable similarity mass; the same lexicographic refinement and
    canonical orientation as align_nodes apply.
    """
    candidates = _compatible_pairs(ref, hyp, align)
    if not candidates:
        return EdgeMatch(pairs=(), compatible=())
    sims = engine.score_pairs(
        [(hyp.edges[h].label, ref.edges[r].label) for h, r, _ in candidates]
    )
    info = {(h, r): (sw, s) for (h, r, sw), s in zip(candidates, sims)}
    compatible = tuple(
        EdgePair(h, r, sw, s) for (h, r, sw), s in zip(candidates, sims)
    )

    n_hyp, n_ref = len(hyp.edges), len(ref.edges)
    # boost > max possible similarity sum, so total weight sorts by
    # (cardinality, label-sim sum) lexicographically
    boost = float(min(n_hyp, n_ref) + 1)
    hyp_major = _hyp_major(ref, hyp)
    shape = (n_hyp, n_ref) if hyp_major else (n_ref, n_hyp)
    weights = np.zeros(shape)
    for (h, r), (_, s) in info.items():
        i, j = (h, r) if hyp_major else (r, h)
        weights[i, j] = boost + s

    pairs = []
    for i, j in _lexmin_assignment(weights):
        h, r = (i, j) if hyp_major else (j, i)
        sw, s = info[(h, r)]
        pairs.append(EdgePair(h, r, sw, s))
    pairs.sort(key=lambda p: p.hyp_index)
    return EdgeMatch(pairs=tuple(pairs), compatible=compatible)
