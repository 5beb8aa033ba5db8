"""Corpus analysis: pre-training/test overlap and summary evaluation."""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from .errors import ConfigError, InputError
from .metrics import rouge2_recall, rouge_l, rouge_l_sum, rouge_n, tokenize
from .rng import derive_example_rng

DEFAULT_THRESHOLDS = (1.0, 0.8, 0.6, 0.4)

__all__ = ["OverlapReport", "DEFAULT_THRESHOLDS", "overlap_report", "evaluate_summaries"]


@dataclass(frozen=True, slots=True)
class OverlapReport:
    """Per-threshold counts of targets whose best document match reaches it.

    thresholds are stored descending, so counts and percentages are
    non-decreasing along the tuple.
    """

    thresholds: tuple[float, ...]
    counts: tuple[int, ...]
    percentages: tuple[float, ...]
    sample_fraction: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "thresholds": list(self.thresholds),
            "counts": list(self.counts),
            "percentages": list(self.percentages),
            "sample_fraction": self.sample_fraction,
        }


def overlap_report(
    targets: Sequence[str],
    documents: Sequence[str],
    thresholds: Sequence[float] = DEFAULT_THRESHOLDS,
    sample_fraction: float = 1.0,
    seed: int = 0,
) -> OverlapReport:
    """Score every target's worst-case contamination against a document set.

    A target's score is the maximum, over documents, of bigram recall of the
    target against the document. Documents may be subsampled: document i is
    kept iff the uniform draw of the stream keyed by str(i) falls below
    sample_fraction, making the sample independent of document order and of
    the seed whenever sample_fraction is 1.
    """
    if not targets:
        raise InputError("no targets to score")
    if not thresholds:
        raise ConfigError("thresholds must be non-empty")
    ordered = tuple(sorted(thresholds, reverse=True))
    for value in ordered:
        if not 0.0 <= value <= 1.0:
            raise ConfigError(f"threshold {value} outside [0, 1]")
    if not 0.0 < sample_fraction <= 1.0:
        raise ConfigError(f"sample_fraction must be in (0, 1], got {sample_fraction}")

    kept = [
        doc
        for index, doc in enumerate(documents)
        if derive_example_rng(seed, str(index)).uniform() < sample_fraction
    ]
    if not kept:
        raise InputError("no documents left after sampling")
    doc_tokens = [tokenize(doc) for doc in kept]

    best_scores = []
    for target in targets:
        target_tokens = tokenize(target)
        best = 0.0
        for tokens in doc_tokens:
            score = rouge2_recall(target_tokens, tokens)
            if score > best:
                best = score
                if best >= 1.0:
                    break
        best_scores.append(best)

    counts = tuple(sum(1 for s in best_scores if s >= t) for t in ordered)
    percentages = tuple(c / len(targets) for c in counts)
    return OverlapReport(ordered, counts, percentages, sample_fraction)


_METRICS = ("r1", "r2", "rl", "rlsum")


def evaluate_summaries(
    candidates: Mapping[str, str], references: Mapping[str, str]
) -> dict[str, Any]:
    """Per-id and corpus-mean ROUGE F1 for aligned summary sets.

    The id sets must match exactly; the error lists what is missing on each
    side. Means are unweighted arithmetic means over ids.
    """
    missing_in_candidates = sorted(set(references) - set(candidates))
    missing_in_references = sorted(set(candidates) - set(references))
    if missing_in_candidates or missing_in_references:
        parts = []
        if missing_in_candidates:
            parts.append(f"ids missing from candidates: {', '.join(missing_in_candidates)}")
        if missing_in_references:
            parts.append(f"ids missing from references: {', '.join(missing_in_references)}")
        raise InputError("; ".join(parts))
    if not candidates:
        raise InputError("no summary pairs to score")

    per_pair: dict[str, dict[str, float]] = {}
    for record_id in sorted(candidates):
        candidate = candidates[record_id]
        reference = references[record_id]
        c_tokens = tokenize(candidate)
        r_tokens = tokenize(reference)
        per_pair[record_id] = {
            "r1": rouge_n(c_tokens, r_tokens, 1).f1,
            "r2": rouge_n(c_tokens, r_tokens, 2).f1,
            "rl": rouge_l(c_tokens, r_tokens).f1,
            "rlsum": rouge_l_sum(candidate, reference).f1,
        }
    mean = {
        name: sum(scores[name] for scores in per_pair.values()) / len(per_pair)
        for name in _METRICS
    }
    return {"per_pair": per_pair, "mean": mean}
