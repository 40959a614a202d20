"""Command line entry point: ``python -m textsim_sidecar``."""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys

from .scorer import ScorerConfig, ScorerLoadError, load_scorer
from .server import serve_stdio, serve_tcp


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="textsim-sidecar",
        description="similarity scorer speaking newline-delimited JSON",
    )
    parser.add_argument(
        "--listen",
        metavar="HOST:PORT",
        help="serve over TCP instead of stdio (PORT 0 picks a free port)",
    )
    parser.add_argument("--config", metavar="PATH", help="JSON scorer config file")
    parser.add_argument("--model", help="override the configured model identity")
    parser.add_argument("--device", help="override the configured device")
    parser.add_argument("--dim", type=int, help="override the embedding dimension")
    parser.add_argument("--max-batch", type=int, help="override the batch limit")
    parser.add_argument(
        "--max-connections",
        type=int,
        default=None,
        help="with --listen, exit after serving this many connections",
    )
    parser.add_argument("--verbose", action="store_true", help="log to stderr")
    return parser


def resolve_config(args: argparse.Namespace) -> ScorerConfig:
    config = ScorerConfig.from_file(args.config) if args.config else ScorerConfig()
    overrides = {
        name: value
        for name, value in (
            ("model", args.model),
            ("device", args.device),
            ("dim", args.dim),
            ("max_batch", args.max_batch),
        )
        if value is not None
    }
    if overrides:
        config = dataclasses.replace(config, **overrides)
    return config


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(name)s: %(message)s",
    )
    # The scorer is constructed before any request is read so a broken
    # config or unloadable model fails fast with a nonzero exit.
    try:
        config = resolve_config(args)
        scorer = load_scorer(config)
    except (ScorerLoadError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.listen:
        host, sep, port_text = args.listen.rpartition(":")
        if not sep or not port_text.isdigit():
            print(f"error: --listen expects HOST:PORT, got {args.listen!r}", file=sys.stderr)
            return 2
        serve_tcp(
            scorer,
            host or "127.0.0.1",
            int(port_text),
            config.max_batch,
            max_connections=args.max_connections,
        )
    else:
        serve_stdio(scorer, config.max_batch)
    return 0


if __name__ == "__main__":
    sys.exit(main())
