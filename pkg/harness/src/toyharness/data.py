"""Dataset I/O for the toy harness: next-k-mer JSONL loading with schema
validation, the synthetic window generator, and the label-shuffle control.

The harness talks to the tokenization pipeline only through its file formats:
next-k-mer JSONL records {input_ids: [80 ints], label, k, source_id, offset}
and the manifest.json sidecar written next to them.
"""
from __future__ import annotations

import json
import random
from pathlib import Path

TOKEN_BUDGET = 80
WINDOW_LENGTH = 56
INPUT_LENGTH = 50
HEXAMER_START = 44  # the last 6 input bases, which determine the synthetic label

BASES = "ACGT"


class SchemaMismatch(Exception):
    """JSONL record does not conform to the next-k-mer schema."""


class LabelOutOfRange(Exception):
    """Record label falls outside [0, 4^k)."""


def load_examples(path: str | Path, k: int) -> tuple[list[list[int]], list[int]]:
    """Read one next-k-mer JSONL file; returns (input_ids rows, labels)."""
    inputs: list[list[int]] = []
    labels: list[int] = []
    n_classes = 4**k
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except ValueError as exc:
                raise SchemaMismatch(f"{path}:{lineno}: not JSON: {exc}") from exc
            missing = {"input_ids", "label", "k"} - set(record)
            if missing:
                raise SchemaMismatch(f"{path}:{lineno}: missing keys {sorted(missing)}")
            ids = record["input_ids"]
            if len(ids) != TOKEN_BUDGET or not all(isinstance(t, int) for t in ids):
                raise SchemaMismatch(
                    f"{path}:{lineno}: input_ids must be {TOKEN_BUDGET} ints"
                )
            if record["k"] != k:
                raise SchemaMismatch(
                    f"{path}:{lineno}: file k={record['k']} but k={k} requested"
                )
            label = record["label"]
            if not isinstance(label, int) or not 0 <= label < n_classes:
                raise LabelOutOfRange(
                    f"{path}:{lineno}: label {label!r} outside [0, {n_classes})"
                )
            inputs.append(ids)
            labels.append(label)
    if not inputs:
        raise SchemaMismatch(f"{path}: no records")
    return inputs, labels


def load_manifest(dataset_path: str | Path) -> dict:
    """The manifest.json sidecar sitting next to a dataset file, if any."""
    sidecar = Path(dataset_path).parent / "manifest.json"
    if not sidecar.is_file():
        return {}
    return json.loads(sidecar.read_text(encoding="ascii"))


def synthetic_label_bases(window: str, k: int) -> str:
    """The generating rule: the label k-mer copies the first k bases of the
    window's final input hexamer (bases 45-50). Doubles as the test oracle."""
    return window[HEXAMER_START : HEXAMER_START + k]


def make_synthetic_windows(n: int, k: int, seed: int) -> list[str]:
    """Deterministic 56-nt windows whose next k-mer is a fixed function of
    the last 6 input bases.

    A fixed 44-nt prefix keeps the early tokens constant while the final
    hexamer varies, so overlapping 6-mers expose the label through token ids
    seen many times each; labels are uniform over all 4^k classes.
    """
    if k not in (2, 3, 4, 5, 6):
        raise ValueError(f"k must be in 2..6, got {k}")
    rng = random.Random(seed)
    prefix = "".join(rng.choice(BASES) for _ in range(HEXAMER_START))
    windows = []
    for _ in range(n):
        hexamer = "".join(rng.choice(BASES) for _ in range(6))
        filler = "".join(rng.choice(BASES) for _ in range(6 - k))
        window = prefix + hexamer + synthetic_label_bases(prefix + hexamer, k) + filler
        assert len(window) == WINDOW_LENGTH
        windows.append(window)
    return windows


def write_windows(windows: list[str], path: str | Path) -> None:
    Path(path).write_text("\n".join(windows) + "\n", encoding="ascii")


def shuffle_labels(src: str | Path, dst: str | Path, seed: int) -> int:
    """Write a copy of a JSONL dataset with its label column permuted.

    The source file is never modified; returns the record count.
    """
    records = []
    with open(src, encoding="ascii") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    labels = [r["label"] for r in records]
    random.Random(seed).shuffle(labels)
    with open(dst, "w", encoding="ascii") as fh:
        for record, label in zip(records, labels):
            fh.write(json.dumps({**record, "label": label}, separators=(",", ":")))
            fh.write("\n")
    return len(records)
