"""Byte pair encoding over ACGT corpora.

Training repeatedly merges the most frequent adjacent token pair (ties broken
lexicographically on the (left, right) strings), replacing occurrences left to
right without overlap. Pair counting counts every adjacent position, including
overlapping ones ("AAAA" holds three "AA" positions). Two trainers implement
the identical contract: `bpe_train` (vectorized) and `bpe_oracle_train` (naive
full rescans, capped corpus size) used to cross-check it in tests.
"""
from __future__ import annotations

import hashlib
import json
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CorpusTooLarge, EmptyCorpus, MalformedFile
from .ioutils import atomic_write_text, dump_json, sha256_bytes
from .sequences import ALPHABET, bases_of

ORACLE_MAX_NT = 10_000

# Pair-count tables of n_ids^2 entries stop being worth it past this point;
# larger tables fall back to the pure-Python reference encoder.
_KERNEL_MAX_IDS = 2048


@dataclass(frozen=True)
class MergeRule:
    """One learned merge: (left, right) -> result, at training rank `rank`."""

    left: str
    right: str
    result: str
    rank: int

    def __post_init__(self):
        if self.result != self.left + self.right:
            raise ValueError(f"rule result {self.result!r} != {self.left!r}+{self.right!r}")
        if self.rank < 0:
            raise ValueError(f"rank must be >= 0, got {self.rank}")


@dataclass(frozen=True)
class MergeTable:
    """The ordered merge rules learned from a corpus; the only trained state.

    `cycles` always equals the number of completed cycles (== len(rules));
    `early_stop` records that training halted before the requested cycle count
    because no pair occurred at least twice.
    """

    rules: tuple[MergeRule, ...]
    cycles: int
    corpus_digest: str
    early_stop: bool = False
    alphabet: tuple[str, ...] = tuple(ALPHABET)

    def __post_init__(self):
        if tuple(self.alphabet) != tuple(ALPHABET):
            raise ValueError(f"alphabet must be {tuple(ALPHABET)}, got {self.alphabet}")
        if self.cycles != len(self.rules):
            raise ValueError(f"cycles ({self.cycles}) != number of rules ({len(self.rules)})")
        derivable = set(self.alphabet)
        for i, rule in enumerate(self.rules):
            if rule.rank != i:
                raise ValueError(f"rule ranks must be contiguous; rule {i} has rank {rule.rank}")
            if rule.left not in derivable or rule.right not in derivable:
                raise ValueError(
                    f"rule {i} ({rule.left!r},{rule.right!r}) uses an underivable operand"
                )
            derivable.add(rule.result)

    def token_strings(self) -> list[str]:
        """Distinct token strings: alphabet plus rule results, first-seen order."""
        seen = dict.fromkeys(self.alphabet)
        for rule in self.rules:
            seen.setdefault(rule.result)
        return list(seen)

    def distinct_token_count(self) -> int:
        return len(self.token_strings())

    def prefix(self, cycles: int) -> "MergeTable":
        """The table after only the first `cycles` training cycles."""
        if not 0 <= cycles <= len(self.rules):
            raise ValueError(f"prefix cycles must be in [0, {len(self.rules)}]")
        return MergeTable(
            rules=self.rules[:cycles],
            cycles=cycles,
            corpus_digest=self.corpus_digest,
            early_stop=False,
        )

    def to_json_dict(self) -> dict:
        return {
            "alphabet": list(self.alphabet),
            "rules": [[r.left, r.right] for r in self.rules],
            "cycles": self.cycles,
            "corpus_digest": self.corpus_digest,
            "early_stop": self.early_stop,
        }

    def to_bytes(self) -> bytes:
        return dump_json(self.to_json_dict()).encode("ascii")

    def digest(self) -> str:
        return sha256_bytes(self.to_bytes())

    def save(self, path: str | Path) -> None:
        atomic_write_text(path, self.to_bytes().decode("ascii"))

    @classmethod
    def from_json_dict(cls, data: dict) -> "MergeTable":
        try:
            rules = tuple(
                MergeRule(left, right, left + right, rank)
                for rank, (left, right) in enumerate(data["rules"])
            )
            return cls(
                rules=rules,
                cycles=data["cycles"],
                corpus_digest=data["corpus_digest"],
                early_stop=data.get("early_stop", False),
                alphabet=tuple(data["alphabet"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedFile(f"invalid merge table: {exc}") from exc

    @classmethod
    def load(cls, path: str | Path) -> "MergeTable":
        try:
            data = json.loads(Path(path).read_text(encoding="ascii"))
        except (OSError, ValueError) as exc:
            raise MalformedFile(f"could not read merge table {path}: {exc}") from exc
        return cls.from_json_dict(data)


def corpus_digest(corpus: Iterable) -> str:
    """Content hash of a training corpus (bases only, in order)."""
    h = hashlib.sha256()
    for item in corpus:
        h.update(bases_of(item).encode("ascii"))
        h.update(b"\n")
    return h.hexdigest()


def _corpus_bases(corpus: Iterable) -> list[str]:
    bases_list = [bases_of(item) for item in corpus]
    if not bases_list or not any(bases_list):
        raise EmptyCorpus("BPE training needs a non-empty corpus")
    return bases_list


_CHAR_LUT = np.full(256, -1, dtype=np.int32)
for _i, _c in enumerate(ALPHABET):
    _CHAR_LUT[ord(_c)] = _i


def _char_ids(bases: str) -> np.ndarray:
    return _CHAR_LUT[np.frombuffer(bases.encode("ascii"), dtype=np.uint8)]


def bpe_train(corpus: Iterable, cycles: int) -> MergeTable:
    """Learn `cycles` merge rules from a corpus of sequences.

    Stops early (early_stop=True, fewer rules) once no adjacent pair occurs at
    least twice. Deterministic: equal (corpus, cycles) give an identical table.
    """
    if cycles < 0:
        raise ValueError(f"cycles must be >= 0, got {cycles}")
    bases_list = _corpus_bases(corpus)
    digest = corpus_digest(bases_list)

    # Token ids are assigned per distinct string; capacity covers the alphabet,
    # one potential new string per cycle, and a boundary sentinel.
    capacity = len(ALPHABET) + cycles + 1
    sentinel = capacity - 1
    strings = list(ALPHABET)
    id_of = {s: i for i, s in enumerate(strings)}

    chunks = []
    boundary = np.array([sentinel], dtype=np.int32)
    for bases in bases_list:
        if bases:
            chunks.append(_char_ids(bases))
        chunks.append(boundary)
    work = np.concatenate(chunks[:-1]) if len(chunks) > 1 else chunks[0]

    rules: list[MergeRule] = []
    early_stop = False
    for _ in range(cycles):
        picked = _most_frequent_pair(work, sentinel, capacity, strings)
        if picked is None:
            early_stop = True
            break
        left_id, right_id = picked
        left_s, right_s = strings[left_id], strings[right_id]
        new_s = left_s + right_s
        new_id = id_of.get(new_s)
        if new_id is None:
            new_id = len(strings)
            strings.append(new_s)
            id_of[new_s] = new_id
        rules.append(MergeRule(left_s, right_s, new_s, len(rules)))
        work = _merge_pass(work, left_id, right_id, new_id)
    return MergeTable(tuple(rules), len(rules), digest, early_stop)


def _most_frequent_pair(work, sentinel, capacity, strings):
    """Max-count adjacent pair with lexicographic (left, right) tie-break, or
    None when no pair occurs at least twice."""
    if work.size < 2:
        return None
    left = work[:-1]
    right = work[1:]
    valid = (left != sentinel) & (right != sentinel)
    codes = left[valid].astype(np.int64) * capacity + right[valid]
    if codes.size == 0:
        return None
    if capacity <= 4096:
        counts = np.bincount(codes, minlength=capacity * capacity)
        best = int(counts.max())
        if best < 2:
            return None
        cand_codes = np.flatnonzero(counts == best)
    else:
        uniq, uniq_counts = np.unique(codes, return_counts=True)
        best = int(uniq_counts.max())
        if best < 2:
            return None
        cand_codes = uniq[uniq_counts == best]
    pairs = [(int(c) // capacity, int(c) % capacity) for c in cand_codes]
    return min(pairs, key=lambda p: (strings[p[0]], strings[p[1]]))


def _merge_pass(work, left_id, right_id, new_id):
    """Left-to-right non-overlapping replacement of (left, right) -> new."""
    matches = np.flatnonzero((work[:-1] == left_id) & (work[1:] == right_id))
    if matches.size == 0:
        return work
    if left_id == right_id and matches.size > 1:
        # Consecutive match positions overlap; greedy keeps even offsets
        # within each run of consecutive positions.
        run_break = np.empty(matches.size, dtype=bool)
        run_break[0] = True
        np.not_equal(np.diff(matches), 1, out=run_break[1:])
        run_starts = matches[run_break]
        run_id = np.cumsum(run_break) - 1
        matches = matches[(matches - run_starts[run_id]) % 2 == 0]
    work[matches] = new_id
    keep = np.ones(work.size, dtype=bool)
    keep[matches + 1] = False
    return work[keep]


def _replace_pair(tokens: list[str], left: str, right: str, new: str) -> list[str]:
    out = []
    i = 0
    n = len(tokens)
    while i < n:
        if i + 1 < n and tokens[i] == left and tokens[i + 1] == right:
            out.append(new)
            i += 2
        else:
            out.append(tokens[i])
            i += 1
    return out


def bpe_oracle_train(corpus: Iterable, cycles: int) -> MergeTable:
    """Naive trainer: full Counter rescan per cycle, no shortcuts.

    Same contract as `bpe_train`; intentionally capped at 10,000 nt so it
    stays an audit tool rather than a production path.
    """
    if cycles < 0:
        raise ValueError(f"cycles must be >= 0, got {cycles}")
    bases_list = _corpus_bases(corpus)
    total = sum(len(b) for b in bases_list)
    if total > ORACLE_MAX_NT:
        raise CorpusTooLarge(f"oracle trainer is capped at {ORACLE_MAX_NT} nt, got {total}")
    digest = corpus_digest(bases_list)
    work = [list(b) for b in bases_list]
    rules: list[MergeRule] = []
    early_stop = False
    for _ in range(cycles):
        counts: Counter = Counter()
        for tokens in work:
            counts.update(zip(tokens, tokens[1:]))
        best = max(counts.values(), default=0)
        if best < 2:
            early_stop = True
            break
        left, right = min(pair for pair, c in counts.items() if c == best)
        new = left + right
        rules.append(MergeRule(left, right, new, len(rules)))
        work = [_replace_pair(tokens, left, right, new) for tokens in work]
    return MergeTable(tuple(rules), len(rules), digest, early_stop)


def bpe_encode_reference(seq, table: MergeTable) -> list[str]:
    """Definitional encoder: start from characters, apply each rule once in
    rank order with left-to-right non-overlapping replacement."""
    tokens = list(bases_of(seq))
    for rule in table.rules:
        if len(tokens) < 2:
            break
        tokens = _replace_pair(tokens, rule.left, rule.right, rule.result)
    return tokens


class BpeEncoder:
    """Reusable fast encoder for one merge table.

    Produces exactly what `bpe_encode_reference` produces, via a compiled
    id-space kernel; build once, encode many.
    """

    def __init__(self, table: MergeTable):
        self.table = table
        strings = list(ALPHABET)
        id_of = {s: i for i, s in enumerate(strings)}
        rules_l, rules_r, rules_t = [], [], []
        for rule in table.rules:
            new_id = id_of.get(rule.result)
            if new_id is None:
                new_id = len(strings)
                strings.append(rule.result)
                id_of[rule.result] = new_id
            rules_l.append(id_of[rule.left])
            rules_r.append(id_of[rule.right])
            rules_t.append(new_id)
        self.strings = strings
        self._rules_l = np.asarray(rules_l, dtype=np.int32)
        self._rules_r = np.asarray(rules_r, dtype=np.int32)
        self._rules_t = np.asarray(rules_t, dtype=np.int32)
        self._use_kernel = len(strings) <= _KERNEL_MAX_IDS

    def encode_ids_batch(self, bases_list: list[str]) -> list[np.ndarray]:
        """Encode many sequences at once; returns per-sequence id arrays
        (ids index into `self.strings`)."""
        if not self._use_kernel:
            lut = {s: i for i, s in enumerate(self.strings)}
            return [
                np.array([lut[t] for t in bpe_encode_reference(b, self.table)], dtype=np.int32)
                for b in bases_list
            ]
        from ._kernels import apply_rules

        lengths = np.array([len(b) for b in bases_list], dtype=np.int64)
        ends = np.cumsum(lengths)
        starts = ends - lengths
        flat = _char_ids("".join(bases_list))
        max_len = int(lengths.max()) if lengths.size else 0
        out, out_lens = apply_rules(
            flat,
            starts,
            ends,
            self._rules_l,
            self._rules_r,
            self._rules_t,
            len(self.strings),
            max(max_len, 1),
        )
        bounds = np.cumsum(out_lens)
        return np.split(out, bounds[:-1])

    def encode_batch(self, bases_list: list[str]) -> list[list[str]]:
        return [
            [self.strings[i] for i in ids] for ids in self.encode_ids_batch(bases_list)
        ]

    def encode(self, seq) -> list[str]:
        return self.encode_batch([bases_of(seq)])[0]


def bpe_encode(seq, table: MergeTable) -> list[str]:
    """Encode one sequence; concatenating the output reproduces the input."""
    return BpeEncoder(table).encode(seq)
