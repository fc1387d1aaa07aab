"""Merged k-mer + BPE vocabulary and the two-stream hybrid encoding.

A hybrid encoding of a segment is its overlapping k-mer token ids followed by
its BPE token ids (optionally wrapped as [CLS] kmers [SEP] bpe [SEP]). Both
streams carry the full segment, so either region decodes back to the bases.
"""
from __future__ import annotations

import json
from collections.abc import Collection
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .bpe import BpeEncoder, MergeTable
from .errors import LossyEncoding, MalformedFile, SequenceTooShort, UnknownToken
from .ioutils import atomic_write_text, dump_json, sha256_bytes
from .sequences import ALPHABET, bases_of

SPECIAL_TOKENS = ("[CLS]", "[SEP]", "[MASK]", "[PAD]", "[UNK]")
CLS_ID, SEP_ID, MASK_ID, PAD_ID, UNK_ID = range(5)

_ACGT_SET = frozenset(ALPHABET)


@dataclass(frozen=True)
class Vocabulary:
    """Bidirectional token <-> id map; specials hold ids 0-4, the rest are
    sorted by (length, lexicographic) so equal token sets give equal files."""

    token_of: tuple[str, ...]
    metadata: dict
    id_of: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.token_of[: len(SPECIAL_TOKENS)] != SPECIAL_TOKENS:
            raise ValueError(f"ids 0-4 must be {SPECIAL_TOKENS}")
        mapping = {tok: i for i, tok in enumerate(self.token_of)}
        if len(mapping) != len(self.token_of):
            raise ValueError("duplicate token strings in vocabulary")
        object.__setattr__(self, "id_of", mapping)

    def __len__(self) -> int:
        return len(self.token_of)

    def id(self, token: str, strict: bool = True) -> int:
        found = self.id_of.get(token)
        if found is None:
            if strict:
                raise UnknownToken(f"token {token!r} is not in the vocabulary")
            return UNK_ID
        return found

    def token(self, token_id: int) -> str:
        return self.token_of[token_id]

    @property
    def counts(self) -> dict:
        return self.metadata["counts"]

    def non_special_tokens(self) -> tuple[str, ...]:
        return self.token_of[len(SPECIAL_TOKENS) :]

    def to_json_dict(self) -> dict:
        return {
            "specials": list(SPECIAL_TOKENS),
            "tokens": list(self.token_of),
            "metadata": self.metadata,
        }

    def to_bytes(self) -> bytes:
        return dump_json(self.to_json_dict()).encode("ascii")

    def digest(self) -> str:
        return sha256_bytes(self.to_bytes())

    def save(self, path: str | Path) -> None:
        """Write the JSON vocabulary plus a one-token-per-line .txt companion
        (line number == id) for generic tooling."""
        path = Path(path)
        atomic_write_text(path, self.to_bytes().decode("ascii"))
        atomic_write_text(path.with_suffix(".txt"), "\n".join(self.token_of) + "\n")

    @classmethod
    def load(cls, path: str | Path) -> "Vocabulary":
        try:
            data = json.loads(Path(path).read_text(encoding="ascii"))
            return cls(token_of=tuple(data["tokens"]), metadata=data["metadata"])
        except (OSError, KeyError, TypeError, ValueError) as exc:
            raise MalformedFile(f"could not load vocabulary {path}: {exc}") from exc


def build_vocabulary(kmer_tokens: Collection[str], table: MergeTable | Collection[str]) -> Vocabulary:
    """Union the k-mer token set with a merge table's token strings, prepend
    the five specials, and assign deterministic ids."""
    kmer_set = set(kmer_tokens)
    if not kmer_set:
        raise ValueError("kmer_tokens must be non-empty")
    lengths = {len(t) for t in kmer_set}
    if len(lengths) != 1:
        raise ValueError(f"kmer tokens must share one length, got lengths {sorted(lengths)}")
    k = lengths.pop()
    for tok in kmer_set:
        if not _ACGT_SET.issuperset(tok):
            raise ValueError(f"kmer token {tok!r} contains non-ACGT characters")

    if isinstance(table, MergeTable):
        bpe_set = set(table.token_strings())
        bpe_cycles = table.cycles
        digest = table.corpus_digest
    else:
        bpe_set = set(table)
        bpe_cycles = None
        digest = None

    union = kmer_set | bpe_set
    ordered = sorted(union, key=lambda t: (len(t), t))
    counts = {
        "kmer": len(kmer_set),
        "bpe": len(bpe_set),
        "shared": len(kmer_set & bpe_set),
        "special": len(SPECIAL_TOKENS),
        "total": len(SPECIAL_TOKENS) + len(union),
    }
    metadata = {
        "k": k,
        "bpe_cycles": bpe_cycles,
        "corpus_digest": digest,
        "counts": counts,
    }
    return Vocabulary(token_of=SPECIAL_TOKENS + tuple(ordered), metadata=metadata)


@dataclass(frozen=True)
class HybridEncoding:
    """Token ids for one segment: k-mer region first, BPE region after."""

    ids: list[int]
    kmer_region: range
    bpe_region: range
    with_specials: bool


class HybridTokenizer:
    """Precomputed encoder mapping segments straight to vocabulary ids.

    The k-mer stream is computed as base-4 codes through a 4^k lookup table;
    the BPE stream goes through the compiled merge kernel. Build once per
    (vocab, table) pair and reuse across a corpus.
    """

    def __init__(self, vocab: Vocabulary, table: MergeTable, strict: bool = True):
        self.vocab = vocab
        self.table = table
        self.strict = strict
        self.k = vocab.metadata["k"]
        self._bpe = BpeEncoder(table)

        kmer_ids = np.full(4**self.k, UNK_ID, dtype=np.int32)
        kmer_known = np.zeros(4**self.k, dtype=bool)
        powers = 4 ** np.arange(self.k - 1, -1, -1, dtype=np.int64)
        base_val = {b: i for i, b in enumerate(ALPHABET)}
        for tok, tid in vocab.id_of.items():
            if len(tok) == self.k and _ACGT_SET.issuperset(tok):
                code = int(sum(base_val[c] * p for c, p in zip(tok, powers)))
                kmer_ids[code] = tid
                kmer_known[code] = True
        self._kmer_ids = kmer_ids
        self._kmer_known = kmer_known

        self._bpe_ids = np.empty(len(self._bpe.strings), dtype=np.int32)
        self._bpe_known = np.zeros(len(self._bpe.strings), dtype=bool)
        for i, s in enumerate(self._bpe.strings):
            tid = vocab.id_of.get(s)
            self._bpe_ids[i] = UNK_ID if tid is None else tid
            self._bpe_known[i] = tid is not None

        lut = np.zeros(256, dtype=np.int64)
        for i, c in enumerate(ALPHABET):
            lut[ord(c)] = i
        self._char_lut = lut

    def _kmer_codes(self, bases: str) -> np.ndarray:
        vals = self._char_lut[np.frombuffer(bases.encode("ascii"), dtype=np.uint8)]
        n = len(bases) - self.k + 1
        codes = vals[:n].copy()
        for j in range(1, self.k):
            codes *= 4
            codes += vals[j : j + n]
        return codes

    def encode_batch(self, segments, with_specials: bool = True) -> list[HybridEncoding]:
        bases_list = [bases_of(s) for s in segments]
        for b in bases_list:
            if len(b) < self.k:
                raise SequenceTooShort(f"segment of length {len(b)} has no {self.k}-mers")
        bpe_streams = self._bpe.encode_ids_batch(bases_list)
        out = []
        for bases, bpe_internal in zip(bases_list, bpe_streams):
            kmer_codes = self._kmer_codes(bases)
            if self.strict:
                if not self._kmer_known[kmer_codes].all():
                    bad = kmer_codes[~self._kmer_known[kmer_codes]][0]
                    raise UnknownToken(f"{self.k}-mer code {int(bad)} is not in the vocabulary")
                if not self._bpe_known[bpe_internal].all():
                    bad = bpe_internal[~self._bpe_known[bpe_internal]][0]
                    raise UnknownToken(
                        f"BPE token {self._bpe.strings[int(bad)]!r} is not in the vocabulary"
                    )
            kmer_ids = self._kmer_ids[kmer_codes].tolist()
            bpe_ids = self._bpe_ids[bpe_internal].tolist()
            nk, nb = len(kmer_ids), len(bpe_ids)
            if with_specials:
                ids = [CLS_ID, *kmer_ids, SEP_ID, *bpe_ids, SEP_ID]
                enc = HybridEncoding(ids, range(1, 1 + nk), range(2 + nk, 2 + nk + nb), True)
            else:
                ids = kmer_ids + bpe_ids
                enc = HybridEncoding(ids, range(0, nk), range(nk, nk + nb), False)
            out.append(enc)
        return out

    def encode(self, segment, with_specials: bool = True) -> HybridEncoding:
        return self.encode_batch([segment], with_specials)[0]


def hybrid_encode(
    segment,
    vocab: Vocabulary,
    table: MergeTable,
    with_specials: bool = True,
    strict: bool = True,
) -> HybridEncoding:
    """One-shot hybrid encoding; prefer HybridTokenizer for whole corpora."""
    return HybridTokenizer(vocab, table, strict=strict).encode(segment, with_specials)


def decode_region(enc: HybridEncoding, region: str, vocab: Vocabulary) -> str:
    """Reconstruct the segment bases from one region of a hybrid encoding."""
    if region == "kmer":
        span = enc.kmer_region
    elif region == "bpe":
        span = enc.bpe_region
    else:
        raise ValueError(f"region must be 'kmer' or 'bpe', got {region!r}")
    ids = enc.ids[span.start : span.stop]
    if UNK_ID in ids:
        raise LossyEncoding(f"[UNK] in {region} region; original bases are unrecoverable")
    tokens = [vocab.token_of[i] for i in ids]
    if region == "bpe":
        return "".join(tokens)
    if not tokens:
        return ""
    return tokens[0] + "".join(t[-1] for t in tokens[1:])
