"""Next-k-mer classification dataset construction.

Each 56-nt window becomes one example: the first 50 nt are hybrid-tokenized
into a fixed 80-token budget (tail-padded with [PAD]), and the k nucleotides
that follow position 50 become one of 4^k class labels under the base-4
encoding A=0, C=1, G=2, T=3 (most significant digit first, i.e. lexicographic
order).
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from .bpe import MergeTable
from .errors import InvalidBase, TokenBudgetExceeded, WindowTooShort
from .sequences import NucleotideSequence, split_items
from .vocab import PAD_ID, HybridTokenizer, Vocabulary

TOKEN_BUDGET = 80
INPUT_LENGTH = 50
LABEL_KS = (2, 3, 4, 5, 6)

_BASE_VALUE = {"A": 0, "C": 1, "G": 2, "T": 3}
_VALUE_BASE = "ACGT"


def label_of(kmer: str) -> int:
    """Base-4 value of a k-mer, A=0 C=1 G=2 T=3, most significant first."""
    value = 0
    for ch in kmer:
        digit = _BASE_VALUE.get(ch)
        if digit is None:
            raise InvalidBase(f"invalid base {ch!r} in {kmer!r}")
        value = value * 4 + digit
    return value


def kmer_of(label: int, k: int) -> str:
    """Inverse of label_of; round-trips for every label in [0, 4^k)."""
    if not 0 <= label < 4**k:
        raise ValueError(f"label {label} out of range for k={k}")
    chars = []
    for _ in range(k):
        chars.append(_VALUE_BASE[label % 4])
        label //= 4
    return "".join(reversed(chars))


@dataclass(frozen=True)
class NextKmerExample:
    input_ids: list[int]
    label: int
    k: int
    source_id: str
    offset: int

    def __post_init__(self):
        if len(self.input_ids) != TOKEN_BUDGET:
            raise ValueError(f"input_ids must hold {TOKEN_BUDGET} ids")
        if not 0 <= self.label < 4**self.k:
            raise ValueError(f"label {self.label} out of range for k={self.k}")


def make_example(
    window,
    k: int,
    vocab: Vocabulary,
    table: MergeTable,
    tokenizer: HybridTokenizer | None = None,
) -> NextKmerExample:
    """Build one example from a window of at least 50+k bases.

    The encoding keeps special tokens ([CLS] kmers [SEP] bpe [SEP]) and is
    padded to exactly 80 ids; an encoding longer than 80 fails rather than
    truncates.
    """
    if k not in LABEL_KS:
        raise ValueError(f"k must be one of {LABEL_KS}, got {k}")
    if isinstance(window, NucleotideSequence):
        bases, source_id, offset = window.bases, window.source_id, window.offset
    else:
        bases, source_id, offset = str(window), "", 0
    if len(bases) < INPUT_LENGTH + k:
        raise WindowTooShort(
            f"window of {len(bases)} nt cannot supply {INPUT_LENGTH} input bases plus a {k}-mer"
        )
    if tokenizer is None:
        tokenizer = HybridTokenizer(vocab, table)
    enc = tokenizer.encode(bases[:INPUT_LENGTH], with_specials=True)
    if len(enc.ids) > TOKEN_BUDGET:
        raise TokenBudgetExceeded(
            f"{source_id}@{offset}: encoding of {len(enc.ids)} ids exceeds {TOKEN_BUDGET}"
        )
    label = label_of(bases[INPUT_LENGTH : INPUT_LENGTH + k])
    ids = enc.ids + [PAD_ID] * (TOKEN_BUDGET - len(enc.ids))
    return NextKmerExample(ids, label, k, source_id, offset)


@dataclass(frozen=True)
class NextKmerDataset:
    """Lazy train/test example streams plus the sidecar manifest."""

    train: Iterator[NextKmerExample]
    test: Iterator[NextKmerExample]
    manifest: dict


def _example_stream(windows, k, vocab, table) -> Iterator[NextKmerExample]:
    tokenizer = HybridTokenizer(vocab, table)
    chunk = 4096
    for lo in range(0, len(windows), chunk):
        batch = windows[lo : lo + chunk]
        for window in batch:
            if len(window.bases) < INPUT_LENGTH + k:
                raise WindowTooShort(
                    f"{window.source_id}@{window.offset}: window of "
                    f"{len(window.bases)} nt cannot supply {INPUT_LENGTH} bases plus a {k}-mer"
                )
        encodings = tokenizer.encode_batch(
            [w.bases[:INPUT_LENGTH] for w in batch], with_specials=True
        )
        for window, enc in zip(batch, encodings):
            if len(enc.ids) > TOKEN_BUDGET:
                raise TokenBudgetExceeded(
                    f"{window.source_id}@{window.offset}: encoding of "
                    f"{len(enc.ids)} ids exceeds {TOKEN_BUDGET}"
                )
            label = label_of(window.bases[INPUT_LENGTH : INPUT_LENGTH + k])
            ids = enc.ids + [PAD_ID] * (TOKEN_BUDGET - len(enc.ids))
            yield NextKmerExample(ids, label, k, window.source_id, window.offset)


def emit_nextkmer_dataset(
    windows: Iterable[NucleotideSequence],
    k: int,
    vocab: Vocabulary,
    table: MergeTable,
    split_fraction: float,
    seed: int,
) -> NextKmerDataset:
    """Deterministically split windows, then stream one example per window."""
    if k not in LABEL_KS:
        raise ValueError(f"k must be one of {LABEL_KS}, got {k}")
    windows = list(windows)
    train_windows, test_windows = split_items(windows, split_fraction, seed)
    manifest = {
        "k": k,
        "vocab_digest": vocab.digest(),
        "merge_digest": table.digest(),
        "counts": {"train": len(train_windows), "test": len(test_windows)},
        "split_seed": seed,
        "split_fraction": split_fraction,
    }
    return NextKmerDataset(
        train=_example_stream(train_windows, k, vocab, table),
        test=_example_stream(test_windows, k, vocab, table),
        manifest=manifest,
    )


def nextkmer_record(example: NextKmerExample) -> dict:
    """JSONL schema: input_ids (80 ints), label, k, source_id, offset."""
    return {
        "input_ids": example.input_ids,
        "label": example.label,
        "k": example.k,
        "source_id": example.source_id,
        "offset": example.offset,
    }
