"""Compiled inner loop for corpus-scale BPE application.

The kernel works purely in integer id space. Token strings are deduplicated
upstream, so id equality is string equality and pair matching stays exact.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def apply_rules(flat, starts, ends, rules_l, rules_r, rules_t, n_ids, max_len):
    """Apply every merge rule, in rank order, to each segment of `flat`.

    flat[starts[s]:ends[s]] holds segment s as per-character token ids.
    Each rule does one left-to-right non-overlapping replacement pass; rules
    whose pair is absent from the current segment are skipped in O(1) via a
    stamped pair-count table.

    Returns (out, out_lens): encoded ids packed back to back, plus per-segment
    lengths.
    """
    n_pairs = n_ids * n_ids
    cnt = np.zeros(n_pairs, np.int32)
    stamp = np.zeros(n_pairs, np.int64)
    epoch = 0
    n_segs = starts.size
    n_rules = rules_l.size
    tok = np.empty(max_len, np.int32)
    out = np.empty(flat.size, np.int32)
    out_lens = np.empty(n_segs, np.int64)
    out_pos = 0
    for s in range(n_segs):
        n = ends[s] - starts[s]
        base = starts[s]
        for i in range(n):
            tok[i] = flat[base + i]
        if n >= 2 and n_rules > 0:
            epoch += 1
            for i in range(n - 1):
                c = tok[i] * n_ids + tok[i + 1]
                if stamp[c] != epoch:
                    stamp[c] = epoch
                    cnt[c] = 0
                cnt[c] += 1
            for r in range(n_rules):
                left = rules_l[r]
                right = rules_r[r]
                c = left * n_ids + right
                if stamp[c] != epoch or cnt[c] <= 0:
                    continue
                new = rules_t[r]
                w = 0
                i = 0
                while i < n:
                    if i < n - 1 and tok[i] == left and tok[i + 1] == right:
                        tok[w] = new
                        i += 2
                    else:
                        tok[w] = tok[i]
                        i += 1
                    w += 1
                n = w
                if n < 2:
                    break
                epoch += 1
                for i in range(n - 1):
                    c2 = tok[i] * n_ids + tok[i + 1]
                    if stamp[c2] != epoch:
                        stamp[c2] = epoch
                        cnt[c2] = 0
                    cnt[c2] += 1
        out_lens[s] = n
        for i in range(n):
            out[out_pos + i] = tok[i]
        out_pos += n
    return out[:out_pos], out_lens
