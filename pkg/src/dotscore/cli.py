"""Command-line front end: validate DOT files, score one pair, score a
corpus into a report, print dataset statistics, and dump normalized graphs.

Exit codes: 0 success, 1 validation-negative, 2 usage or data error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .corpus import (
    CorpusError,
    RunConfig,
    dataset_stats,
    load_candidates,
    load_dataset,
    run_corpus,
)
from .dot_parser import validate_dot
from .legal_graph import to_canonical_dict
from .metrics import InvalidReference, PairScores, normalize_source, score_pair
from .report import write_report
from .similarity import ScorerSpec, ScorerTransportError, engine_from_spec

SIDECAR_ENV = "DOTSCORE_SIDECAR"

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_ERROR = 2

log = logging.getLogger("dotscore.cli")


def _add_scorer_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--scorer",
        choices=("builtin", "sidecar"),
        default="builtin",
        help="similarity scorer: deterministic builtin token F1 or an external sidecar",
    )
    parser.add_argument(
        "--sidecar",
        metavar="ADDRESS",
        help=f"sidecar address (host:port or a command line); ${SIDECAR_ENV} is the fallback",
    )


def _add_score_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--lenient-tail",
        action="store_true",
        help="ignore trailing content after the closing brace instead of rejecting it",
    )
    parser.add_argument(
        "--deceased-as-entity",
        action="store_true",
        help="fold deceased (ellipse) nodes into the entity metric",
    )
    parser.add_argument(
        "--literal-sum",
        action="store_true",
        help="sum edge agreement over all compatible pairs instead of a one-to-one matching (unclamped)",
    )


def _scorer_spec(args: argparse.Namespace) -> ScorerSpec:
    if args.scorer == "builtin":
        return ("builtin",)
    address = args.sidecar or os.environ.get(SIDECAR_ENV)
    if not address:
        raise CorpusError(
            f"sidecar scorer selected but no address given (use --sidecar or ${SIDECAR_ENV})"
        )
    return ("sidecar", address)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_validate(args: argparse.Namespace) -> int:
    any_missing = False
    any_invalid = False
    for path in args.files:
        try:
            source = _read(path)
        except OSError as exc:
            print(f"{path}: error: {exc}", file=sys.stderr)
            any_missing = True
            continue
        result = validate_dot(source, lenient_tail=args.lenient_tail)
        if result.valid:
            print(f"{path}: valid")
        else:
            print(f"{path}: invalid: {result.error}")
            any_invalid = True
    if any_missing:
        return EXIT_ERROR
    return EXIT_INVALID if any_invalid else EXIT_OK


def _pair_scores_dict(scores: PairScores, scorer: str, config) -> dict:
    return {
        "valid": scores.valid,
        "scorer": scorer,
        "config": dataclasses.asdict(config),
        "metrics": {
            name: {
                "tp": ms.counts.tp,
                "fp": ms.counts.fp,
                "fn": ms.counts.fn,
                "f1": ms.f1,
            }
            for name, ms in scores.by_name().items()
        },
    }


def cmd_score(args: argparse.Namespace) -> int:
    engine = engine_from_spec(_scorer_spec(args))
    run = RunConfig(
        lenient_tail=args.lenient_tail,
        deceased_as_entity=args.deceased_as_entity,
        literal_sum=args.literal_sum,
    )
    config = run.score_config()
    scores = score_pair(_read(args.ref), _read(args.hyp), engine, config)
    payload = _pair_scores_dict(scores, engine.name, config)
    _emit(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n", args.out)
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    config = RunConfig(
        k=args.k,
        metric_candidate=args.metric_candidate,
        parallelism=args.parallelism,
        lenient_tail=args.lenient_tail,
        deceased_as_entity=args.deceased_as_entity,
        literal_sum=args.literal_sum,
    )
    records = load_dataset(args.dataset, lenient_tail=config.lenient_tail)
    log.info("loaded %d instances from %s", len(records), args.dataset)
    candidate_sets = load_candidates(args.candidates)
    log.info("loaded %d candidate sets from %s", len(candidate_sets), args.candidates)
    report = run_corpus(
        records,
        candidate_sets,
        _scorer_spec(args),
        config,
        toolkit_version=__version__,
    )
    write_report(report, args.format, args.out)
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    per_file = {}
    combined: list = []
    for path in args.files:
        records = load_dataset(path, lenient_tail=args.lenient_tail)
        combined.extend(records)
        per_file[path] = dataclasses.asdict(dataset_stats(records))
    payload = {
        "files": per_file,
        "combined": dataclasses.asdict(dataset_stats(combined)),
    }
    _emit(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n", args.out)
    return EXIT_OK


def cmd_graph(args: argparse.Namespace) -> int:
    source = _read(args.file)
    try:
        graph = normalize_source(source, lenient_tail=args.lenient_tail)
    except Exception as exc:
        print(f"{args.file}: invalid: {exc}", file=sys.stderr)
        return EXIT_INVALID
    _emit(
        json.dumps(to_canonical_dict(graph), indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        args.out,
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dotscore",
        description="Evaluate machine-generated legal-diagram DOT against references.",
    )
    parser.add_argument("--version", action="version", version=f"dotscore {__version__}")
    parser.add_argument("--verbose", action="store_true", help="progress logging to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check DOT files for validity")
    p.add_argument("files", nargs="+")
    p.add_argument("--lenient-tail", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("score", help="score one hypothesis DOT file against a reference")
    p.add_argument("ref")
    p.add_argument("hyp")
    _add_scorer_flags(p)
    _add_score_config_flags(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("report", help="score a candidate file over a dataset split")
    p.add_argument("--dataset", required=True)
    p.add_argument("--candidates", required=True)
    p.add_argument("--k", type=int, default=10, help="validity window for the Top-k rate")
    p.add_argument(
        "--metric-candidate",
        choices=("top1", "best-valid"),
        default="top1",
        help="which candidate feeds the seven metric columns",
    )
    p.add_argument("--format", choices=("json", "csv", "markdown"), default="json")
    p.add_argument("--out")
    p.add_argument("--parallelism", type=int, default=1)
    _add_scorer_flags(p)
    _add_score_config_flags(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("stats", help="dataset statistics (instances, nodes, relations)")
    p.add_argument("files", nargs="+")
    p.add_argument("--lenient-tail", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("graph", help="print the normalized graph of a DOT file as JSON")
    p.add_argument("file")
    p.add_argument("--lenient-tail", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_graph)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except (CorpusError, InvalidReference, ScorerTransportError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
