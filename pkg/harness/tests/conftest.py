import random
import subprocess
import sys

import pytest

from toyharness import data


def dnatok(*args) -> None:
    """Invoke the tokenization pipeline CLI; the harness only consumes its
    file outputs."""
    proc = subprocess.run(
        [sys.executable, "-m", "dnatok", *map(str, args)],
        capture_output=True,
        text=True,
    )
    if proc.returncode != 0:
        raise RuntimeError(f"dnatok {' '.join(map(str, args))} failed: {proc.stderr}")


@pytest.fixture(scope="session")
def pipeline_artifacts(tmp_path_factory):
    """Merge table + vocabulary trained once per session on a small corpus."""
    root = tmp_path_factory.mktemp("pipeline")
    corpus = root / "corpus.txt"
    rng = random.Random(2024)
    corpus.write_text("".join(rng.choice("ACGT") for _ in range(120_000)) + "\n")
    merges = root / "merges.json"
    vocab = root / "vocab.json"
    dnatok("train-bpe", "--input", corpus, "--cycles", "600", "--out", merges)
    dnatok("build-vocab", "--merges", merges, "--k", "6", "--out", vocab)
    return merges, vocab


@pytest.fixture(scope="session")
def synthetic_dataset(tmp_path_factory, pipeline_artifacts):
    """Learnable synthetic next-k-mer dataset (k=3) emitted by the pipeline."""
    merges, vocab = pipeline_artifacts
    root = tmp_path_factory.mktemp("dataset")
    windows = root / "windows.txt"
    data.write_windows(data.make_synthetic_windows(5000, k=3, seed=11), windows)
    out_dir = root / "ds"
    dnatok(
        "emit-nextkmer", "--vocab", vocab, "--merges", merges,
        "--input", windows, "--k", "3", "--seed", "5", "--out-dir", out_dir,
    )
    return out_dir / "train.jsonl", out_dir / "test.jsonl", windows
