"""numba backend: plain loops compiled with @njit.

Float expressions must stay textually in sync with _numpy.py; both backends
evaluate the same IEEE-754 operation trees so results match bit-for-bit.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def lcs_length(a, b):
    # rolling two-row DP
    n = a.shape[0]
    m = b.shape[0]
    if n == 0 or m == 0:
        return 0
    prev = np.zeros(m + 1, dtype=np.int64)
    curr = np.zeros(m + 1, dtype=np.int64)
    for i in range(n):
        ai = a[i]
        for j in range(m):
            if ai == b[j]:
                curr[j + 1] = prev[j] + 1
            elif prev[j + 1] >= curr[j]:
                curr[j + 1] = prev[j + 1]
            else:
                curr[j + 1] = curr[j]
        tmp = prev
        prev = curr
        curr = tmp
    return prev[m]


@njit(cache=True)
def clipped_overlap(a, b):
    # multiset intersection size via sorted two-pointer walk
    if a.shape[0] == 0 or b.shape[0] == 0:
        return 0
    sa = np.sort(a)
    sb = np.sort(b)
    i = 0
    j = 0
    total = 0
    while i < sa.shape[0] and j < sb.shape[0]:
        if sa[i] < sb[j]:
            i += 1
        elif sa[i] > sb[j]:
            j += 1
        else:
            v = sa[i]
            ca = 0
            while i < sa.shape[0] and sa[i] == v:
                ca += 1
                i += 1
            cb = 0
            while j < sb.shape[0] and sb[j] == v:
                cb += 1
                j += 1
            total += ca if ca < cb else cb
    return total


@njit(cache=True)
def greedy_select(turn_ids, offsets, summary_ids, vocab_size, m):
    """Greedy turn selection scored by unigram F1 against the summary ids.

    Each step adds the unselected turn maximizing F1 of the selection's token
    multiset union against the summary; ties go to the lowest index. Returns
    (chosen indices in choice order, winning F1 per step).
    """
    n = offsets.shape[0] - 1
    summary_len = summary_ids.shape[0]
    summary_counts = np.zeros(vocab_size, dtype=np.int64)
    for k in range(summary_len):
        summary_counts[summary_ids[k]] += 1
    pool_counts = np.zeros(vocab_size, dtype=np.int64)
    scratch = np.zeros(vocab_size, dtype=np.int64)
    selected = np.zeros(n, dtype=np.uint8)
    order = np.empty(m, dtype=np.int64)
    scores = np.empty(m, dtype=np.float64)
    base_overlap = 0
    pool_len = 0
    for step in range(m):
        best = -1
        best_f1 = -1.0
        for i in range(n):
            if selected[i] == 1:
                continue
            s = offsets[i]
            e = offsets[i + 1]
            delta = 0
            for k in range(s, e):
                t = turn_ids[k]
                if pool_counts[t] + scratch[t] < summary_counts[t]:
                    delta += 1
                scratch[t] += 1
            for k in range(s, e):
                scratch[turn_ids[k]] = 0
            overlap = base_overlap + delta
            cand_len = pool_len + (e - s)
            p = overlap / cand_len if cand_len > 0 else 0.0
            r = overlap / summary_len if summary_len > 0 else 0.0
            denom = p + r
            f1 = 2.0 * p * r / denom if denom > 0.0 else 0.0
            if f1 > best_f1:
                best_f1 = f1
                best = i
        s = offsets[best]
        e = offsets[best + 1]
        for k in range(s, e):
            t = turn_ids[k]
            if pool_counts[t] < summary_counts[t]:
                base_overlap += 1
            pool_counts[t] += 1
        pool_len += e - s
        selected[best] = 1
        order[step] = best
        scores[step] = best_f1
    return order, scores


@njit(cache=True)
def independent_scores(turn_ids, offsets, vocab_size):
    """Unigram F1 of each turn against all remaining turns, scored once."""
    n = offsets.shape[0] - 1
    total = turn_ids.shape[0]
    tot_counts = np.zeros(vocab_size, dtype=np.int64)
    for k in range(total):
        tot_counts[turn_ids[k]] += 1
    scratch = np.zeros(vocab_size, dtype=np.int64)
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        s = offsets[i]
        e = offsets[i + 1]
        for k in range(s, e):
            scratch[turn_ids[k]] += 1
        overlap = 0
        for k in range(s, e):
            t = turn_ids[k]
            c = scratch[t]
            if c > 0:
                rest = tot_counts[t] - c
                overlap += c if c < rest else rest
                scratch[t] = -c  # visited marker; restored below
        for k in range(s, e):
            t = turn_ids[k]
            if scratch[t] < 0:
                scratch[t] = 0
        turn_len = e - s
        rest_len = total - turn_len
        p = overlap / turn_len if turn_len > 0 else 0.0
        r = overlap / rest_len if rest_len > 0 else 0.0
        denom = p + r
        out[i] = 2.0 * p * r / denom if denom > 0.0 else 0.0
    return out
