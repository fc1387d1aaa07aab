"""Sequence ingestion: FASTA/plain parsing, ACGT run splitting, segmentation, windows, splits.

Sequences are immutable and validated on construction; every operation here is a
pure function of its inputs (plus an explicit seed where sampling is involved),
so re-running a pipeline reproduces byte-identical outputs.
"""
from __future__ import annotations

import re
import warnings
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import EmptyCorpus, MalformedFile
from .ioutils import read_text

ALPHABET = "ACGT"
DEFAULT_SEGMENT_LENGTH = 305

_ACGT_SET = frozenset(ALPHABET)
_ACGT_RUN = re.compile(r"[ACGT]+")


@dataclass(frozen=True)
class NucleotideSequence:
    """A run of uppercase A/C/G/T bases with its origin inside a source record."""

    bases: str
    source_id: str
    offset: int = 0

    def __post_init__(self):
        if self.offset < 0:
            raise ValueError(f"offset must be >= 0, got {self.offset}")
        if not _ACGT_SET.issuperset(self.bases):
            bad = sorted(set(self.bases) - _ACGT_SET)
            raise ValueError(f"bases outside ACGT: {bad!r}")

    def __len__(self) -> int:
        return len(self.bases)


@dataclass(frozen=True)
class Segment:
    """A fixed-length window of a sequence; `length` must match exactly."""

    seq: NucleotideSequence
    length: int = DEFAULT_SEGMENT_LENGTH

    def __post_init__(self):
        if len(self.seq.bases) != self.length:
            raise ValueError(
                f"segment requires exactly {self.length} bases, got {len(self.seq.bases)}"
            )

    @classmethod
    def from_sequence(cls, seq: NucleotideSequence) -> "Segment":
        return cls(seq=seq, length=len(seq.bases))

    @property
    def bases(self) -> str:
        return self.seq.bases

    @property
    def source_id(self) -> str:
        return self.seq.source_id

    @property
    def offset(self) -> int:
        return self.seq.offset


@dataclass(frozen=True)
class CorpusSplit:
    """Deterministic train/test partition of a segment list."""

    train: tuple[Segment, ...]
    test: tuple[Segment, ...]
    seed: int


def bases_of(item) -> str:
    """Accept Segment, NucleotideSequence, or a raw string; return the bases."""
    if isinstance(item, Segment):
        return item.seq.bases
    if isinstance(item, NucleotideSequence):
        return item.bases
    if isinstance(item, str):
        if not _ACGT_SET.issuperset(item):
            raise ValueError(f"bases outside ACGT in {item!r:.40}")
        return item
    raise TypeError(f"expected Segment, NucleotideSequence, or str, got {type(item)}")


def _parse_fasta(text: str) -> list[tuple[str, str]]:
    records: list[tuple[str, list[str]]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith(">"):
            header = stripped[1:].strip()
            name = header.split()[0] if header else f"record{len(records) + 1}"
            records.append((name, []))
        else:
            if not records:
                raise MalformedFile(
                    f"FASTA sequence data before the first '>' header (line {lineno})"
                )
            records[-1][1].append(stripped)
    return [(name, "".join(chunks)) for name, chunks in records]


def _parse_plain(text: str) -> list[tuple[str, str]]:
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped:
            records.append((f"line{lineno}", stripped))
    return records


def load_sequences(path: str | Path, format: str = "fasta") -> list[NucleotideSequence]:
    """Load a corpus file and return one sequence per maximal ACGT run.

    Lowercase bases are uppercased; any other character (e.g. N) splits the
    record into separate runs, with offsets counted inside the source record.
    Gzip-compressed files are accepted by the ``.gz`` extension.
    """
    if format not in ("fasta", "plain"):
        raise ValueError(f"format must be 'fasta' or 'plain', got {format!r}")
    text = read_text(path)
    records = _parse_fasta(text) if format == "fasta" else _parse_plain(text)
    seqs: list[NucleotideSequence] = []
    for source_id, raw in records:
        upper = raw.upper()
        for match in _ACGT_RUN.finditer(upper):
            seqs.append(NucleotideSequence(match.group(), source_id, match.start()))
    if not seqs:
        raise EmptyCorpus(f"no ACGT content in {path}")
    return seqs


def detect_format(path: str | Path) -> str:
    """Guess fasta vs plain from the first non-blank character."""
    text = read_text(path)
    for line in text.splitlines():
        if line.strip():
            return "fasta" if line.lstrip().startswith(">") else "plain"
    return "plain"


def segment(
    seqs: Iterable[NucleotideSequence], length: int = DEFAULT_SEGMENT_LENGTH
) -> list[Segment]:
    """Cut sequences into non-overlapping windows of exactly `length` bases.

    Trailing remainders shorter than `length` are dropped; output follows input
    order, then offset order.
    """
    if length < 1:
        raise ValueError(f"segment length must be >= 1, got {length}")
    out: list[Segment] = []
    for seq in seqs:
        n_full = len(seq.bases) // length
        for i in range(n_full):
            start = i * length
            piece = NucleotideSequence(
                seq.bases[start : start + length], seq.source_id, seq.offset + start
            )
            out.append(Segment(piece, length))
    return out


def extract_windows(
    seqs: Iterable[NucleotideSequence],
    window: int = 510,
    keep: int = 56,
    stride: int = 1,
    *,
    count: int,
    seed: int,
) -> list[NucleotideSequence]:
    """Slide a `window`-length window, keep each window's first `keep` bases,
    then sample `count` of the kept prefixes uniformly without replacement.

    Returns fewer than `count` (with a warning) when fewer windows exist.
    """
    if keep > window:
        raise ValueError(f"keep ({keep}) must be <= window ({window})")
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    candidates: list[NucleotideSequence] = []
    for seq in seqs:
        for start in range(0, len(seq.bases) - window + 1, stride):
            candidates.append(
                NucleotideSequence(
                    seq.bases[start : start + keep], seq.source_id, seq.offset + start
                )
            )
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(candidates))
    if len(candidates) < count:
        warnings.warn(
            f"requested {count} windows but only {len(candidates)} exist",
            stacklevel=2,
        )
    return [candidates[i] for i in order[:count]]


def split_items(items: Sequence, train_fraction: float, seed: int) -> tuple[list, list]:
    """Deterministic shuffle under `seed`, then prefix/suffix split at
    round(train_fraction * N)."""
    if not 0 < train_fraction < 1:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(items))
    n_train = round(train_fraction * len(items))
    train = [items[i] for i in order[:n_train]]
    test = [items[i] for i in order[n_train:]]
    return train, test


def split(segments: Sequence[Segment], train_fraction: float, seed: int) -> CorpusSplit:
    train, test = split_items(segments, train_fraction, seed)
    return CorpusSplit(tuple(train), tuple(test), seed)


def sequence_record(item: Segment | NucleotideSequence) -> dict:
    """JSONL record form: {source_id, offset, bases}."""
    seq = item.seq if isinstance(item, Segment) else item
    return {"source_id": seq.source_id, "offset": seq.offset, "bases": seq.bases}
