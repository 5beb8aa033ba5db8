"""Turn selection: which dialogue turns become the extracted pseudo summary."""

from __future__ import annotations

import math

import numpy as np

from . import kernels
from .errors import ConfigError, InputError
from .metrics import join_turns, tokenize
from .model import Dialogue, GeneratedSummary, PrincipalOrder, PrincipalSelection

__all__ = [
    "compute_m",
    "select_principal_gsg_plus",
    "select_principal_gsg_star",
    "render_principal",
]


def compute_m(turn_count: int, compression_ratio: float) -> int:
    """Selection size: round-half-up of ratio * turns, clamped to [1, turns - 1]."""
    if turn_count < 2:
        raise InputError(f"dialogue has {turn_count} turn(s); need at least 2")
    if not 0.0 < compression_ratio < 1.0:
        raise ConfigError(f"compression_ratio must be in (0, 1), got {compression_ratio}")
    m = math.floor(compression_ratio * turn_count + 0.5)
    return max(1, min(m, turn_count - 1))


def _encode_turns(
    dialogue: Dialogue, summary_tokens: list[str]
) -> tuple[np.ndarray, np.ndarray, np.ndarray, int]:
    """Flatten per-turn token ids (scoring uses bare turn text, no speakers)."""
    vocab: dict[str, int] = {}
    flat: list[int] = []
    offsets = np.empty(len(dialogue.turns) + 1, dtype=np.int64)
    offsets[0] = 0
    for i, turn in enumerate(dialogue.turns):
        for token in tokenize(turn.text):
            v = vocab.get(token)
            if v is None:
                v = len(vocab)
                vocab[token] = v
            flat.append(v)
        offsets[i + 1] = len(flat)
    summary_ids = np.empty(len(summary_tokens), dtype=np.int64)
    for i, token in enumerate(summary_tokens):
        v = vocab.get(token)
        if v is None:
            v = len(vocab)
            vocab[token] = v
        summary_ids[i] = v
    turn_ids = np.asarray(flat, dtype=np.int64)
    return turn_ids, offsets, summary_ids, len(vocab)


def _check_m(dialogue: Dialogue, m: int) -> None:
    n = len(dialogue.turns)
    if n < 2:
        raise InputError(f"dialogue {dialogue.id!r} has {n} turn(s); need at least 2")
    if not 1 <= m <= n - 1:
        raise InputError(f"m must be in [1, {n - 1}] for {n} turns, got {m}")


def select_principal_gsg_plus(
    dialogue: Dialogue, summary: GeneratedSummary, m: int
) -> PrincipalSelection:
    """Greedy selection: each step adds the turn maximizing unigram F1 of the
    running selection against the helper summary; ties go to the lowest index.
    """
    _check_m(dialogue, m)
    if summary.dialogue_id != dialogue.id:
        raise InputError(
            f"summary is for {summary.dialogue_id!r}, dialogue is {dialogue.id!r}"
        )
    turn_ids, offsets, summary_ids, vocab_size = _encode_turns(dialogue, tokenize(summary.text))
    order, scores = kernels.greedy_select(turn_ids, offsets, summary_ids, vocab_size, m)
    trace = tuple((int(order[k]), float(scores[k])) for k in range(m))
    return PrincipalSelection(
        indices=tuple(sorted(index for index, _ in trace)), m=m, trace=trace
    )


def select_principal_gsg_star(dialogue: Dialogue, m: int) -> PrincipalSelection:
    """Independent selection: every turn scored once (unigram F1 against the
    rest of the dialogue), top-m kept, ties to the lowest index. Needs no
    helper summary.
    """
    _check_m(dialogue, m)
    turn_ids, offsets, _, vocab_size = _encode_turns(dialogue, [])
    scores = kernels.independent_scores(turn_ids, offsets, vocab_size)
    ranked = sorted(range(len(dialogue.turns)), key=lambda i: (-scores[i], i))[:m]
    trace = tuple((i, float(scores[i])) for i in ranked)
    return PrincipalSelection(indices=tuple(sorted(ranked)), m=m, trace=trace)


def render_principal(
    dialogue: Dialogue, selection: PrincipalSelection, order: PrincipalOrder
) -> str:
    """Render the selected turns as target text, one turn per line.

    DIALOGUE keeps original positions; SCORE sorts by descending selection
    score, ties keeping selection order.
    """
    n = len(dialogue.turns)
    if selection.indices and selection.indices[-1] >= n:
        raise InputError(
            f"selection index {selection.indices[-1]} out of range for {n} turns"
        )
    if order is PrincipalOrder.SCORE:
        entries = sorted(selection.trace, key=lambda entry: -entry[1])
        indices = [index for index, _ in entries]
    else:
        indices = list(selection.indices)
    return join_turns([dialogue.turns[i] for i in indices], with_speaker=True)
