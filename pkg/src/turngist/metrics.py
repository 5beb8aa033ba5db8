"""Tokenization and ROUGE-style overlap metrics.

Tokenization rule used everywhere: Unicode lowercase, every non-alphanumeric
character acts as a separator, tokens are the remaining maximal alphanumeric
runs. No stemming, no stopword removal.

n-gram scores use clipped (multiset-minimum) counts. Sequence-level LCS
scores use F1 with equal precision/recall weighting. All scores are exact
rational arithmetic until the final float divisions.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from collections.abc import Sequence

import numpy as np

from . import kernels
from .model import RougeScore, Turn, ZERO_SCORE

TokenSequence = list[str]

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> TokenSequence:
    """Lowercase and split into maximal alphanumeric runs."""
    return _TOKEN_RE.findall(text.lower())


def join_turns(turns: Sequence[Turn], with_speaker: bool = True) -> str:
    """One line per turn: "speaker: text" when a speaker is set, else "text"."""
    lines = []
    for turn in turns:
        if with_speaker and turn.speaker:
            lines.append(f"{turn.speaker}: {turn.text}")
        else:
            lines.append(turn.text)
    return "\n".join(lines)


def _intern(a: Sequence[str], b: Sequence[str]) -> tuple[np.ndarray, np.ndarray, int]:
    """Map the union vocabulary of two token sequences to dense int64 ids."""
    vocab: dict[str, int] = {}
    encoded = []
    for seq in (a, b):
        ids = np.empty(len(seq), dtype=np.int64)
        for i, token in enumerate(seq):
            v = vocab.get(token)
            if v is None:
                v = len(vocab)
                vocab[token] = v
            ids[i] = v
        encoded.append(ids)
    return encoded[0], encoded[1], len(vocab)


def _ngram_codes(ids: np.ndarray, n: int, base: int) -> np.ndarray | None:
    """Pack each length-n window into one int64, or None if it cannot fit."""
    count = ids.shape[0] - n + 1
    if count <= 0:
        return np.empty(0, dtype=np.int64)
    if n > 1 and base > 1 and n * math.log2(base) > 62:
        return None
    codes = np.zeros(count, dtype=np.int64)
    for j in range(n):
        codes = codes * base + ids[j : j + count]
    return codes


def _clipped_ngram_overlap(candidate: Sequence[str], reference: Sequence[str], n: int) -> int:
    c_ids, r_ids, vocab_size = _intern(candidate, reference)
    c_codes = _ngram_codes(c_ids, n, vocab_size)
    r_codes = _ngram_codes(r_ids, n, vocab_size)
    if c_codes is None or r_codes is None:
        # id packing would overflow; count tuples directly
        c_counts = Counter(tuple(candidate[i : i + n]) for i in range(len(candidate) - n + 1))
        r_counts = Counter(tuple(reference[i : i + n]) for i in range(len(reference) - n + 1))
        return sum(min(count, r_counts[gram]) for gram, count in c_counts.items())
    return int(kernels.clipped_overlap(c_codes, r_codes))


def rouge_n(candidate: TokenSequence, reference: TokenSequence, n: int = 1) -> RougeScore:
    """Clipped n-gram precision/recall/F1. A side with no n-grams scores 0."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    c_count = max(len(candidate) - n + 1, 0)
    r_count = max(len(reference) - n + 1, 0)
    if c_count == 0 or r_count == 0:
        return ZERO_SCORE
    overlap = _clipped_ngram_overlap(candidate, reference, n)
    return RougeScore.from_precision_recall(overlap / c_count, overlap / r_count)


def rouge_l(candidate: TokenSequence, reference: TokenSequence) -> RougeScore:
    """Longest-common-subsequence precision/recall/F1 over whole sequences."""
    if not candidate or not reference:
        return ZERO_SCORE
    c_ids, r_ids, _ = _intern(candidate, reference)
    lcs = int(kernels.lcs_length(c_ids, r_ids))
    return RougeScore.from_precision_recall(lcs / len(candidate), lcs / len(reference))


def _lcs_ref_indices(ref: TokenSequence, can: TokenSequence) -> set[int]:
    """Reference-token indices of one canonical LCS.

    Backtrack rule when several maximal subsequences exist: take the diagonal
    on a match, otherwise move along the candidate axis only when it strictly
    wins. Pinned because the union below depends on the choice.
    """
    rows = len(ref)
    cols = len(can)
    if rows == 0 or cols == 0:
        return set()
    table = [[0] * (cols + 1) for _ in range(rows + 1)]
    for i in range(1, rows + 1):
        prev_row = table[i - 1]
        row = table[i]
        ref_tok = ref[i - 1]
        for j in range(1, cols + 1):
            if ref_tok == can[j - 1]:
                row[j] = prev_row[j - 1] + 1
            else:
                row[j] = max(prev_row[j], row[j - 1])
    out: set[int] = set()
    i, j = rows, cols
    while i > 0 and j > 0:
        if ref[i - 1] == can[j - 1]:
            out.add(i - 1)
            i -= 1
            j -= 1
        elif table[i][j - 1] > table[i - 1][j]:
            j -= 1
        else:
            i -= 1
    return out


def rouge_l_sum(candidate: str, reference: str) -> RougeScore:
    """Summary-level LCS score over raw texts.

    Texts are split into sentences on newlines. Each reference sentence
    contributes the union of its LCS matches across all candidate sentences;
    matched tokens are then clipped against both sides' token multisets.
    Single-sentence inputs reduce exactly to rouge_l.
    """
    can_sents = [s for s in (tokenize(line) for line in candidate.split("\n")) if s]
    ref_sents = [s for s in (tokenize(line) for line in reference.split("\n")) if s]
    if not can_sents or not ref_sents:
        return ZERO_SCORE
    c_total = sum(len(s) for s in can_sents)
    r_total = sum(len(s) for s in ref_sents)
    can_counts: Counter[str] = Counter()
    ref_counts: Counter[str] = Counter()
    for s in can_sents:
        can_counts.update(s)
    for s in ref_sents:
        ref_counts.update(s)
    hits = 0
    for ref_sent in ref_sents:
        union: set[int] = set()
        for can_sent in can_sents:
            union |= _lcs_ref_indices(ref_sent, can_sent)
        for idx in sorted(union):
            token = ref_sent[idx]
            if can_counts[token] > 0 and ref_counts[token] > 0:
                hits += 1
                can_counts[token] -= 1
                ref_counts[token] -= 1
    return RougeScore.from_precision_recall(hits / c_total, hits / r_total)


def rouge2_recall(target: TokenSequence, document: TokenSequence) -> float:
    """Fraction of the target's bigrams found in the document (clipped).

    Targets with fewer than two tokens have no bigrams and score 0.
    """
    t_count = len(target) - 1
    if t_count < 1:
        return 0.0
    if len(document) < 2:
        return 0.0
    return _clipped_ngram_overlap(document, target, 2) / t_count
