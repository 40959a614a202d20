"""Generate a synthetic corpus split plus candidate files.

Emits a dataset JSONL shaped like the real corpus (one record per
instance, all 23 languages), a self-candidate file (the reference as its
own single candidate, useful for determinism checks), and a perturbed
candidate file (noisy hypotheses for metric exercises).

    python3 scripts/gen_synth_split.py --per-language 50 --out-dir /tmp/split
"""

from __future__ import annotations

import argparse
import pathlib
import random

from dotscore.legal_graph import render_dot
from dotscore.metrics import normalize_source
from dotscore.synth import perturb_graph, synth_split, write_jsonl


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--per-language", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--ops", type=int, default=2, help="perturbation strength")
    parser.add_argument("--out-dir", default="synth_split")
    args = parser.parse_args()

    out_dir = pathlib.Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    records = synth_split(args.per_language, seed=args.seed)
    write_jsonl(str(out_dir / "dataset.jsonl"), records)

    self_rows = []
    noisy_rows = []
    rng = random.Random(args.seed + 1)
    for record in records:
        identity = {"ID": record["ID"], "language": record["language"]}
        self_rows.append({**identity, "candidates": [record["Graphviz"]]})
        graph = normalize_source(record["Graphviz"])
        noisy = render_dot(perturb_graph(rng, graph, ops=args.ops))
        noisy_rows.append({**identity, "candidates": [noisy]})
    write_jsonl(str(out_dir / "candidates_self.jsonl"), self_rows)
    write_jsonl(str(out_dir / "candidates_perturbed.jsonl"), noisy_rows)
    print(f"wrote {len(records)} instances to {out_dir}")


if __name__ == "__main__":
    main()
