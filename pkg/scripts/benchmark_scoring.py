"""Scoring throughput benchmark over a synthetic corpus.

Times a full corpus run (load, score, aggregate) at several parallelism
levels and reports instances per second, plus a determinism check that
the rendered report is byte-identical across levels.

    python3 scripts/benchmark_scoring.py --per-language 50 --parallelism 1 2 4 8
"""

from __future__ import annotations

import argparse
import pathlib
import random
import time

from dotscore import __version__
from dotscore.corpus import RunConfig, load_candidates, load_dataset, run_corpus
from dotscore.legal_graph import render_dot
from dotscore.metrics import normalize_source
from dotscore.report import render_json
from dotscore.synth import perturb_graph, synth_split, write_jsonl


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--per-language", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--ops", type=int, default=2, help="perturbation strength (0 = self)")
    parser.add_argument("--parallelism", type=int, nargs="+", default=[1, 2, 4, 8])
    parser.add_argument("--tmp", default="/tmp/dotscore_bench")
    args = parser.parse_args()

    tmp = pathlib.Path(args.tmp)
    tmp.mkdir(parents=True, exist_ok=True)
    records = synth_split(args.per_language, seed=args.seed)
    rng = random.Random(args.seed + 1)
    rows = []
    for record in records:
        source = record["Graphviz"]
        if args.ops > 0:
            source = render_dot(perturb_graph(rng, normalize_source(source), ops=args.ops))
        rows.append(
            {"ID": record["ID"], "language": record["language"], "candidates": [source]}
        )
    dataset_path = tmp / "dataset.jsonl"
    candidates_path = tmp / "candidates.jsonl"
    write_jsonl(str(dataset_path), records)
    write_jsonl(str(candidates_path), rows)

    dataset = load_dataset(str(dataset_path))
    candidates = load_candidates(str(candidates_path))
    n = len(dataset)
    rendered: dict[int, str] = {}
    for level in args.parallelism:
        config = RunConfig(parallelism=level)
        started = time.perf_counter()
        report = run_corpus(
            dataset, candidates, ("builtin",), config, toolkit_version=__version__
        )
        elapsed = time.perf_counter() - started
        rendered[level] = render_json(report)
        print(f"parallelism {level}: {elapsed:6.2f} s  ({n / elapsed:7.1f} instances/s)")

    baseline = rendered[args.parallelism[0]]
    for level, text in rendered.items():
        marker = "ok" if text == baseline else "MISMATCH"
        print(f"parallelism {level}: report bytes {marker}")


if __name__ == "__main__":
    main()
