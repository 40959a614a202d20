"""dotscore: scoring machine-generated legal-diagram DOT against references.

Pipeline: parse DOT (dot_parser) -> normalize into a typed legal graph
(legal_graph) -> align nodes and match edges (alignment, similarity) ->
pairwise F1 metrics and validity (metrics) -> corpus ingestion, aggregation
and reports (corpus, report).  `synth` generates seeded synthetic corpora
for tests and experiments.
"""

__version__ = "0.1.0"

from .alignment import EdgeMatch, EdgePair, NodeAlignment, align_nodes, match_edges
from .corpus import (
    CandidateSet,
    CorpusError,
    DatasetStats,
    InstanceRecord,
    InstanceScore,
    RunConfig,
    aggregate,
    dataset_stats,
    load_candidates,
    load_dataset,
    run_corpus,
    run_scoring,
)
from .dot_parser import DotAst, DotParseError, parse_dot, serialize, validate_dot
from .legal_graph import (
    EdgeKind,
    LegalEdge,
    LegalGraph,
    LegalNode,
    NodeKind,
    NormalizeError,
    from_ast,
    render_dot,
    to_canonical_dict,
)
from .metrics import (
    Counts,
    InvalidReference,
    MetricScore,
    PairScores,
    ScoreConfig,
    f1_from_counts,
    score_graphs,
    score_pair,
    valid_at_k,
)
from .report import CorpusReport, LanguageBlock, MetricCell, parse_report, render, write_report
from .similarity import (
    ScorerTransportError,
    SidecarScorer,
    SimilarityEngine,
    TokenF1Scorer,
    make_engine,
    similarity_matrix,
    token_f1,
)

__all__ = [
    "__version__",
    "parse_dot",
    "validate_dot",
    "serialize",
    "DotAst",
    "DotParseError",
    "from_ast",
    "render_dot",
    "to_canonical_dict",
    "LegalGraph",
    "LegalNode",
    "LegalEdge",
    "NodeKind",
    "EdgeKind",
    "NormalizeError",
    "token_f1",
    "TokenF1Scorer",
    "SimilarityEngine",
    "SidecarScorer",
    "ScorerTransportError",
    "make_engine",
    "similarity_matrix",
    "align_nodes",
    "match_edges",
    "NodeAlignment",
    "EdgeMatch",
    "EdgePair",
    "Counts",
    "MetricScore",
    "PairScores",
    "ScoreConfig",
    "InvalidReference",
    "f1_from_counts",
    "score_graphs",
    "score_pair",
    "valid_at_k",
    "InstanceRecord",
    "CandidateSet",
    "InstanceScore",
    "DatasetStats",
    "RunConfig",
    "CorpusError",
    "load_dataset",
    "load_candidates",
    "dataset_stats",
    "run_scoring",
    "run_corpus",
    "aggregate",
    "CorpusReport",
    "LanguageBlock",
    "MetricCell",
    "parse_report",
    "render",
    "write_report",
]
