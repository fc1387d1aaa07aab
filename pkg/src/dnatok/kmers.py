"""Overlapping k-mer tokenization and the exhaustive 4^k vocabulary."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import SequenceTooShort
from .sequences import ALPHABET, bases_of

# 4^k must stay enumerable for vocabulary construction and label spaces.
MAX_K = 12


@dataclass(frozen=True)
class KmerConfig:
    k: int = 6

    def __post_init__(self):
        _check_k(self.k)


def _check_k(k: int) -> None:
    if not 1 <= k <= MAX_K:
        raise ValueError(f"k must be in [1, {MAX_K}], got {k}")


def kmer_tokenize(seq, k: int = 6) -> list[str]:
    """All overlapping length-k substrings, left to right: exactly n - k + 1 tokens."""
    _check_k(k)
    bases = bases_of(seq)
    if len(bases) < k:
        raise SequenceTooShort(f"sequence of length {len(bases)} has no {k}-mers")
    return [bases[i : i + k] for i in range(len(bases) - k + 1)]


def kmer_vocabulary(k: int) -> list[str]:
    """All 4^k strings over ACGT, lexicographic under A < C < G < T."""
    _check_k(k)
    return ["".join(p) for p in product(ALPHABET, repeat=k)]
