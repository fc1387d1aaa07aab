"""Masked-LM example construction over hybrid encodings.

The k-mer region gets span masking: anchors are scanned left to right, each
picked with the configured probability, and a picked anchor masks the whole
span anchor+offsets (clipped at the region edges). Anchors whose span would
overlap an already-masked span are skipped, so spans never overlap. The BPE
region masks each token independently. Masked positions are always replaced
by [MASK]; there is no random/keep split.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

import numpy as np

from .errors import RegionTooSmall
from .sequences import Segment
from .vocab import MASK_ID, HybridEncoding, HybridTokenizer, MergeTable, Vocabulary

# Value stored in target_ids at unmasked positions (file-format convention).
IGNORE_INDEX = -100


@dataclass(frozen=True)
class MaskingConfig:
    mask_probability: float = 0.15
    span_offsets: tuple[int, ...] = (-2, -1, 0, 1, 2, 3)
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.mask_probability < 1:
            raise ValueError(f"mask_probability must be in (0, 1), got {self.mask_probability}")
        offs = tuple(self.span_offsets)
        if 0 not in offs:
            raise ValueError("span_offsets must contain 0 (the anchor)")
        if list(offs) != list(range(offs[0], offs[-1] + 1)):
            raise ValueError(f"span_offsets must be contiguous, got {offs}")
        object.__setattr__(self, "span_offsets", offs)


@dataclass(frozen=True)
class MaskedExample:
    """input_ids with [MASK] substituted; target_ids hold the original id at
    masked positions and IGNORE_INDEX elsewhere. kmer_spans records the
    selected k-mer spans as (start, stop) index pairs for auditing."""

    input_ids: list[int]
    target_ids: list[int]
    mask_positions: list[int]
    kmer_spans: list[tuple[int, int]]


def mask_hybrid(
    enc: HybridEncoding, cfg: MaskingConfig, rng: np.random.Generator | None = None
) -> MaskedExample:
    """Mask one hybrid encoding; deterministic given (enc, cfg.seed).

    `rng` overrides the config-seeded generator; corpus emitters pass one
    derived from (cfg.seed, example index) so output is order-independent.
    """
    nk = len(enc.kmer_region)
    nb = len(enc.bpe_region)
    if nk < len(cfg.span_offsets):
        raise RegionTooSmall(
            f"k-mer region of {nk} tokens cannot hold a {len(cfg.span_offsets)}-token span"
        )
    if rng is None:
        rng = np.random.default_rng(cfg.seed)

    n = len(enc.ids)
    masked = np.zeros(n, dtype=bool)
    spans: list[tuple[int, int]] = []
    off_lo, off_hi = cfg.span_offsets[0], cfg.span_offsets[-1]
    k_start = enc.kmer_region.start

    anchor_draws = rng.random(nk)
    for a in range(nk):
        if anchor_draws[a] >= cfg.mask_probability:
            continue
        lo = k_start + max(0, a + off_lo)
        hi = k_start + min(nk - 1, a + off_hi) + 1
        if masked[lo:hi].any():
            continue
        masked[lo:hi] = True
        spans.append((lo, hi))

    token_draws = rng.random(nb) < cfg.mask_probability
    b_start = enc.bpe_region.start
    masked[b_start : b_start + nb][token_draws] = True

    positions = np.flatnonzero(masked).tolist()
    input_ids = list(enc.ids)
    target_ids = [IGNORE_INDEX] * n
    for p in positions:
        input_ids[p] = MASK_ID
        target_ids[p] = enc.ids[p]
    return MaskedExample(input_ids, target_ids, positions, spans)


def emit_mlm_corpus(
    segments: Iterable[Segment],
    vocab: Vocabulary,
    table: MergeTable,
    cfg: MaskingConfig,
    with_specials: bool = True,
) -> Iterator[tuple[Segment, MaskedExample]]:
    """One masked example per segment, in input order.

    Per-example randomness is derived from (cfg.seed, index), so equal inputs
    and seed give byte-identical output regardless of chunking.
    """
    tokenizer = HybridTokenizer(vocab, table)
    segments = list(segments)
    chunk = 4096
    index = 0
    for lo in range(0, len(segments), chunk):
        batch = segments[lo : lo + chunk]
        encodings = tokenizer.encode_batch(batch, with_specials)
        for seg, enc in zip(batch, encodings):
            rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(index,)))
            try:
                example = mask_hybrid(enc, cfg, rng=rng)
            except RegionTooSmall as exc:
                raise RegionTooSmall(f"{seg.source_id}@{seg.offset}: {exc}") from exc
            yield seg, example
            index += 1


def mlm_record(seg: Segment, example: MaskedExample) -> dict:
    """JSONL schema: input_ids, target_ids, mask_positions, source_id, offset."""
    return {
        "input_ids": example.input_ids,
        "target_ids": example.target_ids,
        "mask_positions": example.mask_positions,
        "source_id": seg.source_id,
        "offset": seg.offset,
    }
