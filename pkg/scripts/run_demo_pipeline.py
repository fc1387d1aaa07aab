#!/usr/bin/env python3
"""End-to-end demo on a synthetic corpus: train merges, build the hybrid
vocabulary, emit MLM and next-k-mer datasets, and print a short summary.

Usage: python scripts/run_demo_pipeline.py [--out-dir demo_out] [--nt 200000]
"""
import argparse
import json
import sys
from pathlib import Path

import numpy as np

from dnatok.cli import run


def random_corpus(path: Path, nt: int, seed: int) -> None:
    rng = np.random.default_rng(seed)
    lut = np.frombuffer(b"ACGT", dtype=np.uint8)
    bases = lut[rng.integers(0, 4, nt)].tobytes().decode("ascii")
    path.write_text(bases + "\n")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="demo_out")
    parser.add_argument("--nt", type=int, default=200_000)
    parser.add_argument("--cycles", type=int, default=600)
    parser.add_argument("--seed", type=int, default=17)
    args = parser.parse_args()

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    corpus = out / "corpus.txt"
    random_corpus(corpus, args.nt, args.seed)

    merges = out / "merges.json"
    vocab = out / "vocab.json"
    steps = [
        ["train-bpe", "--input", str(corpus), "--cycles", str(args.cycles),
         "--out", str(merges)],
        ["build-vocab", "--merges", str(merges), "--k", "6", "--out", str(vocab)],
        ["tokenize", "--vocab", str(vocab), "--merges", str(merges),
         "--input", str(corpus), "--out", str(out / "tokens.jsonl")],
        ["emit-mlm", "--vocab", str(vocab), "--merges", str(merges),
         "--input", str(corpus), "--seed", str(args.seed),
         "--out", str(out / "mlm.jsonl")],
        ["emit-nextkmer", "--vocab", str(vocab), "--merges", str(merges),
         "--input", str(corpus), "--k", "3", "--seed", str(args.seed),
         "--stride", "50", "--count", str(max(10, args.nt // 200)),
         "--out-dir", str(out / "nextkmer")],
        ["stats", "--input", str(corpus), "--schemes", "kmer6,bpe,hybrid",
         "--merges", str(merges), "--out", str(out / "stats.csv"),
         "--markdown", str(out / "stats.md")],
        ["manifest", "--vocab", str(vocab), "--merges", str(merges),
         "--corpus", str(corpus), "--out", str(out / "manifest.json")],
    ]
    for step in steps:
        print(f"$ dnatok {' '.join(step)}")
        code = run(step)
        if code != 0:
            print(f"step failed with exit code {code}", file=sys.stderr)
            return code

    manifest = json.loads((out / "nextkmer" / "manifest.json").read_text())
    print(f"\ndone: {manifest['counts']['train']} train / "
          f"{manifest['counts']['test']} test next-kmer examples under {out}/")
    print((out / "stats.md").read_text())
    return 0


if __name__ == "__main__":
    sys.exit(main())
