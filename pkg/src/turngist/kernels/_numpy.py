"""numpy backend: vectorized equivalents of the numba kernels.

Integer work is exact, float expressions mirror _numba.py operation for
operation, so both backends return bit-identical values.
"""

import numpy as np


def lcs_length(a, b):
    n = a.shape[0]
    m = b.shape[0]
    if n == 0 or m == 0:
        return 0
    # row recurrence: dp[i][j] = running max of max(dp[i-1][j], dp[i-1][j-1] + eq)
    prev = np.zeros(m + 1, dtype=np.int64)
    for i in range(n):
        cand = np.maximum(prev[1:], prev[:-1] + (b == a[i]))
        prev = np.concatenate((prev[:1], np.maximum.accumulate(cand)))
    return int(prev[m])


def clipped_overlap(a, b):
    if a.shape[0] == 0 or b.shape[0] == 0:
        return 0
    va, ca = np.unique(a, return_counts=True)
    vb, cb = np.unique(b, return_counts=True)
    _, ia, ib = np.intersect1d(va, vb, assume_unique=True, return_indices=True)
    return int(np.minimum(ca[ia], cb[ib]).sum())


def _turn_count_matrix(turn_ids, offsets, vocab_size):
    n = offsets.shape[0] - 1
    counts = np.zeros((n, vocab_size), dtype=np.int64)
    if vocab_size == 0:
        return counts
    for i in range(n):
        seg = turn_ids[offsets[i] : offsets[i + 1]]
        if seg.shape[0]:
            counts[i] = np.bincount(seg, minlength=vocab_size)
    return counts


def greedy_select(turn_ids, offsets, summary_ids, vocab_size, m):
    """Greedy turn selection scored by unigram F1 against the summary ids.

    Same contract as the numba kernel: ties go to the lowest index, returns
    (chosen indices in choice order, winning F1 per step).
    """
    n = offsets.shape[0] - 1
    lens = np.diff(offsets)
    summary_len = int(summary_ids.shape[0])
    if vocab_size > 0:
        summary_counts = np.bincount(summary_ids, minlength=vocab_size).astype(np.int64)
    else:
        summary_counts = np.zeros(0, dtype=np.int64)
    turn_counts = _turn_count_matrix(turn_ids, offsets, vocab_size)
    pool = np.zeros(vocab_size, dtype=np.int64)
    pool_len = 0
    alive = np.ones(n, dtype=bool)
    order = np.empty(m, dtype=np.int64)
    scores = np.empty(m, dtype=np.float64)
    for step in range(m):
        overlap = np.minimum(pool[None, :] + turn_counts, summary_counts[None, :]).sum(axis=1)
        cand_len = pool_len + lens
        p = np.where(cand_len > 0, overlap / np.maximum(cand_len, 1), 0.0)
        if summary_len > 0:
            r = overlap / summary_len
        else:
            r = np.zeros(n, dtype=np.float64)
        denom = p + r
        f1 = np.where(denom > 0.0, 2.0 * p * r / np.where(denom > 0.0, denom, 1.0), 0.0)
        f1 = np.where(alive, f1, -1.0)
        best = int(np.argmax(f1))
        order[step] = best
        scores[step] = f1[best]
        pool += turn_counts[best]
        pool_len += int(lens[best])
        alive[best] = False
    return order, scores


def independent_scores(turn_ids, offsets, vocab_size):
    """Unigram F1 of each turn against all remaining turns, scored once."""
    n = offsets.shape[0] - 1
    lens = np.diff(offsets)
    total = int(turn_ids.shape[0])
    if vocab_size > 0:
        tot_counts = np.bincount(turn_ids, minlength=vocab_size).astype(np.int64)
    else:
        tot_counts = np.zeros(0, dtype=np.int64)
    turn_counts = _turn_count_matrix(turn_ids, offsets, vocab_size)
    overlap = np.minimum(turn_counts, tot_counts[None, :] - turn_counts).sum(axis=1)
    rest_len = total - lens
    p = np.where(lens > 0, overlap / np.maximum(lens, 1), 0.0)
    r = np.where(rest_len > 0, overlap / np.maximum(rest_len, 1), 0.0)
    denom = p + r
    return np.where(denom > 0.0, 2.0 * p * r / np.where(denom > 0.0, denom, 1.0), 0.0)
