"""Token distribution diagnostics: frequencies, Gini imbalance, compression.

The Gini coefficient is computed over the count vector of the full token
universe, zeros included: tokens a scheme never emits are exactly the
imbalance being measured. Specials are excluded from the universe since they
never appear in a raw token stream.
"""
from __future__ import annotations

import csv
import io
import time
from collections import Counter
from collections.abc import Collection, Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bpe import BpeEncoder, MergeTable
from .errors import EmptyStream
from .kmers import kmer_tokenize, kmer_vocabulary
from .sequences import Segment
from .vocab import Vocabulary


@dataclass(frozen=True)
class TokenStatsReport:
    frequency: dict[str, int]
    gini: float
    vocab_utilization: float
    tokens_per_nt: float
    length_histogram: dict[int, int]

    @property
    def total_tokens(self) -> int:
        return sum(self.frequency.values())


def gini_coefficient(counts) -> float:
    """Gini of a non-negative count vector; 0 = uniform, -> 1 = concentrated."""
    xs = np.sort(np.asarray(counts, dtype=np.float64))
    n = xs.size
    total = xs.sum()
    if n == 0 or total <= 0:
        return 0.0
    ranks = np.arange(1, n + 1)
    return float((2.0 * (ranks * xs).sum() - (n + 1) * total) / (n * total))


def _universe(vocab: Vocabulary | Collection[str]) -> tuple[str, ...]:
    if isinstance(vocab, Vocabulary):
        return vocab.non_special_tokens()
    return tuple(vocab)


def _stats_from_counter(
    frequency: Counter, universe: tuple[str, ...], input_nt: int | None
) -> TokenStatsReport:
    total = sum(frequency.values())
    if total == 0:
        raise EmptyStream("token stream is empty")
    counts = [frequency.get(t, 0) for t in universe]
    used = sum(1 for c in counts if c > 0)
    length_histogram: dict[int, int] = {}
    for tok, c in frequency.items():
        length_histogram[len(tok)] = length_histogram.get(len(tok), 0) + c
    return TokenStatsReport(
        frequency=dict(frequency),
        gini=gini_coefficient(counts),
        vocab_utilization=used / len(universe) if universe else 0.0,
        tokens_per_nt=total / input_nt if input_nt else float("nan"),
        length_histogram=dict(sorted(length_histogram.items())),
    )


def compute_stats(
    token_stream: Iterable[str],
    vocab: Vocabulary | Collection[str],
    input_nt: int | None = None,
) -> TokenStatsReport:
    """Exact counts over a token stream, measured against a token universe.

    `input_nt` is the nucleotide count the stream was produced from; without
    it tokens_per_nt is NaN.
    """
    return _stats_from_counter(Counter(token_stream), _universe(vocab), input_nt)


@dataclass(frozen=True)
class KmerScheme:
    k: int = 6

    @property
    def name(self) -> str:
        return f"kmer{self.k}"

    def universe(self):
        return kmer_vocabulary(self.k)

    def tokenize(self, bases_list: list[str]) -> Iterable[str]:
        for bases in bases_list:
            yield from kmer_tokenize(bases, self.k)


@dataclass(frozen=True)
class BpeScheme:
    table: MergeTable

    @property
    def name(self) -> str:
        return "bpe"

    def universe(self):
        return self.table.token_strings()

    def tokenize(self, bases_list: list[str]) -> Iterable[str]:
        encoder = BpeEncoder(self.table)
        for tokens in encoder.encode_batch(bases_list):
            yield from tokens


@dataclass(frozen=True)
class HybridScheme:
    k: int
    table: MergeTable

    @property
    def name(self) -> str:
        return "hybrid"

    def universe(self):
        return sorted(
            set(kmer_vocabulary(self.k)) | set(self.table.token_strings()),
            key=lambda t: (len(t), t),
        )

    def tokenize(self, bases_list: list[str]) -> Iterable[str]:
        encoder = BpeEncoder(self.table)
        bpe_streams = encoder.encode_batch(bases_list)
        for bases, bpe_tokens in zip(bases_list, bpe_streams):
            yield from kmer_tokenize(bases, self.k)
            yield from bpe_tokens


@dataclass(frozen=True)
class SchemeRow:
    scheme: str
    report: TokenStatsReport
    nt_per_sec: float


@dataclass(frozen=True)
class ComparisonReport:
    rows: tuple[SchemeRow, ...]

    _COLUMNS = ("scheme", "total_tokens", "tokens_per_nt", "gini", "vocab_utilization", "nt_per_sec")

    def _table(self) -> list[list[str]]:
        out = [list(self._COLUMNS)]
        for row in self.rows:
            out.append(
                [
                    row.scheme,
                    str(row.report.total_tokens),
                    f"{row.report.tokens_per_nt:.6f}",
                    f"{row.report.gini:.6f}",
                    f"{row.report.vocab_utilization:.6f}",
                    f"{row.nt_per_sec:.0f}",
                ]
            )
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(self._table())
        return buf.getvalue()

    def to_markdown(self) -> str:
        rows = self._table()
        lines = ["| " + " | ".join(rows[0]) + " |"]
        lines.append("|" + "|".join(" --- " for _ in rows[0]) + "|")
        for row in rows[1:]:
            lines.append("| " + " | ".join(row) + " |")
        return "\n".join(lines) + "\n"


def _count_tokens(scheme, shards: list[list[str]], threads: int) -> Counter:
    if threads <= 1 or len(shards) <= 1:
        counter = Counter()
        for shard in shards:
            counter.update(scheme.tokenize(shard))
        return counter
    with ThreadPoolExecutor(max_workers=threads) as pool:
        partials = list(pool.map(lambda s: Counter(scheme.tokenize(s)), shards))
    counter = Counter()
    for part in partials:  # merged in shard order; sums are order-independent
        counter.update(part)
    return counter


def compare_tokenizers(
    corpus: Iterable[Segment], schemes, threads: int = 1
) -> ComparisonReport:
    """One stats row per scheme plus wall-clock tokenization throughput."""
    schemes = list(schemes)
    if not schemes:
        raise ValueError("at least one scheme is required")
    bases_list = [seg.bases for seg in corpus]
    total_nt = sum(len(b) for b in bases_list)
    n_shards = max(1, min(threads, len(bases_list))) if threads > 1 else 1
    shards = [bases_list[i::n_shards] for i in range(n_shards)]
    rows = []
    for scheme in schemes:
        # warm-up keeps one-time JIT/cache loading out of the timed run
        for _ in scheme.tokenize(bases_list[:1]):
            pass
        start = time.perf_counter()
        frequency = _count_tokens(scheme, shards, threads)
        elapsed = time.perf_counter() - start
        report = _stats_from_counter(frequency, tuple(scheme.universe()), total_nt)
        rows.append(SchemeRow(scheme.name, report, total_nt / elapsed if elapsed > 0 else 0.0))
    return ComparisonReport(tuple(rows))
