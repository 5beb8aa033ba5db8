"""Streaming corpus pipeline: clean, join, build, truncate, write.

Dialogues stream through in chunks; each chunk is a pure function of its
lines plus the immutable config and summary table, so the work can fan out
to worker processes while the parent writes chunk results back in submission
order. Output bytes are identical for any worker count.
"""

from __future__ import annotations

import json
import logging
import os
import re
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from contextlib import suppress
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator

from .errors import ConfigError, InputError
from .io import (
    dumps_record,
    example_to_dict,
    load_summary_map,
    parse_dialogue_obj,
    scan_summary_duplicates,
)
from .model import (
    Dialogue,
    GeneratedSummary,
    StrategyConfig,
    TrainingExample,
    Turn,
    summaries_required,
)
from .objective import build_example
from .selector import compute_m

logger = logging.getLogger("turngist.pipeline")

__all__ = [
    "PipelineStats",
    "clean_text",
    "clean_dialogue",
    "truncate_example",
    "join_summaries",
    "run_pipeline",
    "compute_stats_report",
]

# A token is stripped when the whole whitespace-delimited run starts with a
# scheme or www. prefix; anything glued on after the prefix goes with it.
_URL_RE = re.compile(r"(?<!\S)(?:https?://|www\.)\S*", re.IGNORECASE)

# Common emoji blocks plus the variation selector and zero-width joiner.
_EMOJI_RE = re.compile(
    "["
    "\U0001F300-\U0001F5FF"
    "\U0001F600-\U0001F64F"
    "\U0001F680-\U0001F6FF"
    "\U0001F900-\U0001F9FF"
    "\U0001FA70-\U0001FAFF"
    "☀-⛿"
    "✀-➿"
    "️"
    "‍"
    "]"
)


def clean_text(text: str) -> str:
    """Strip URL tokens and emoji, collapse whitespace runs to single spaces."""
    text = _URL_RE.sub(" ", text)
    text = _EMOJI_RE.sub("", text)
    return " ".join(text.split())


def clean_dialogue(dialogue: Dialogue) -> Dialogue | None:
    """Clean every turn, drop turns left empty, drop dialogues under 2 turns."""
    turns = []
    for turn in dialogue.turns:
        text = clean_text(turn.text)
        if not text:
            continue
        speaker = clean_text(turn.speaker) if turn.speaker else ""
        turns.append(Turn(text=text, speaker=speaker or None))
    if len(turns) < 2:
        return None
    return Dialogue(id=dialogue.id, turns=tuple(turns))


def truncate_example(example: TrainingExample, max_tokens: int) -> TrainingExample:
    """Enforce the whitespace-token budget on the input text.

    Whole turns are dropped from the end; the prefix line and at least one
    turn always survive, even when that single turn overshoots the budget.
    The target is never touched.
    """
    if max_tokens < 1:
        raise ConfigError(f"max_tokens must be >= 1, got {max_tokens}")
    if len(example.input_text.split()) <= max_tokens:
        return example
    lines = example.input_text.split("\n")
    budget = max_tokens - len(lines[0].split())
    kept = [lines[0]]
    used = 0
    for i, line in enumerate(lines[1:]):
        cost = len(line.split())
        if i > 0 and used + cost > budget:
            break
        kept.append(line)
        used += cost
    return TrainingExample(
        dialogue_id=example.dialogue_id,
        input_text="\n".join(kept),
        target_text=example.target_text,
        source=example.source,
        copied_turn_indices=example.copied_turn_indices,
    )


def join_summaries(
    dialogues: Iterable[Dialogue], summaries: Iterable[GeneratedSummary]
) -> Iterator[tuple[Dialogue, GeneratedSummary | None]]:
    """Left join by id. Duplicate ids on either side are an error."""
    by_id: dict[str, GeneratedSummary] = {}
    for summary in summaries:
        if summary.dialogue_id in by_id:
            raise InputError(f"duplicate summary id: {summary.dialogue_id!r}")
        by_id[summary.dialogue_id] = summary
    seen: set[str] = set()
    for dialogue in dialogues:
        if dialogue.id in seen:
            raise InputError(f"duplicate dialogue id: {dialogue.id!r}")
        seen.add(dialogue.id)
        yield dialogue, by_id.get(dialogue.id)


@dataclass(slots=True)
class PipelineStats:
    dialogues_in: int = 0
    dropped_short: int = 0
    dropped_missing_summary: int = 0
    examples_out: int = 0
    source_counts: dict[str, int] = field(default_factory=lambda: {"G": 0, "P": 0})
    copied_turn_total: int = 0
    mean_turns: float = 0.0
    mean_m: float = 0.0

    @property
    def p_fraction(self) -> float:
        total = self.source_counts["G"] + self.source_counts["P"]
        return self.source_counts["P"] / total if total else 0.0

    def to_dict(self) -> dict[str, Any]:
        return {
            "dialogues_in": self.dialogues_in,
            "dropped_short": self.dropped_short,
            "dropped_missing_summary": self.dropped_missing_summary,
            "examples_out": self.examples_out,
            "source_counts": dict(self.source_counts),
            "copied_turn_total": self.copied_turn_total,
            "mean_turns": self.mean_turns,
            "mean_m": self.mean_m,
            "p_fraction": self.p_fraction,
        }


def compute_stats_report(stats: PipelineStats) -> str:
    """Human-readable rendering of the stats (the JSON twin is to_dict())."""
    rows = [
        ("dialogues_in", str(stats.dialogues_in)),
        ("dropped_short", str(stats.dropped_short)),
        ("dropped_missing_summary", str(stats.dropped_missing_summary)),
        ("examples_out", str(stats.examples_out)),
        ("source_counts", f"G={stats.source_counts['G']} P={stats.source_counts['P']}"),
        ("copied_turn_total", str(stats.copied_turn_total)),
        ("mean_turns", f"{stats.mean_turns:.4f}"),
        ("mean_m", f"{stats.mean_m:.4f}"),
        ("p_fraction", f"{stats.p_fraction:.4f}"),
    ]
    lines = [f"{name:<26}{value}" for name, value in rows]
    if stats.examples_out == 0:
        lines.append("warning: no examples emitted")
    return "\n".join(lines)


@dataclass(slots=True)
class _ChunkResult:
    ids: list[str]
    missing: list[str]
    block: str
    dialogues_in: int = 0
    dropped_short: int = 0
    dropped_missing: int = 0
    g_count: int = 0
    p_count: int = 0
    copied_total: int = 0
    turns_sum: int = 0
    m_sum: int = 0


_CHUNK_LINES = 512

# per-process state, set once by _init_worker (or in-process for workers=1)
_WORKER: dict[str, Any] = {}


def _init_worker(config_dict: dict[str, Any], summaries_path: str | None) -> None:
    config = StrategyConfig.from_dict(config_dict)
    if summaries_path is not None and summaries_required(config):
        summaries = load_summary_map(summaries_path)
    else:
        summaries = {}
    _WORKER["config"] = config
    _WORKER["summaries"] = summaries


def _process_chunk(items: list[tuple[int, str]]) -> _ChunkResult:
    config: StrategyConfig = _WORKER["config"]
    summaries: dict[str, str] = _WORKER["summaries"]
    need_summary = summaries_required(config)
    result = _ChunkResult(ids=[], missing=[], block="")
    parts: list[str] = []
    for line_no, line in items:
        where = f"line {line_no}"
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise InputError(f"{where}: invalid JSON: {exc}") from None
        dialogue = parse_dialogue_obj(obj, where)
        result.ids.append(dialogue.id)
        result.dialogues_in += 1
        cleaned = clean_dialogue(dialogue)
        if cleaned is None:
            result.dropped_short += 1
            continue
        summary_text = summaries.get(dialogue.id)
        if need_summary and summary_text is None:
            result.missing.append(dialogue.id)
            result.dropped_missing += 1
            continue
        summary = (
            GeneratedSummary(dialogue.id, summary_text) if summary_text is not None else None
        )
        example = truncate_example(build_example(cleaned, summary, config), config.max_tokens)
        parts.append(dumps_record(example_to_dict(example)))
        if example.source == "G":
            result.g_count += 1
        else:
            result.p_count += 1
        result.copied_total += len(example.copied_turn_indices)
        result.turns_sum += len(cleaned.turns)
        result.m_sum += compute_m(len(cleaned.turns), config.compression_ratio)
    result.block = "".join(part + "\n" for part in parts)
    return result


def _iter_chunks(path: str) -> Iterator[list[tuple[int, str]]]:
    chunk: list[tuple[int, str]] = []
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            chunk.append((line_no, line))
            if len(chunk) >= _CHUNK_LINES:
                yield chunk
                chunk = []
    if chunk:
        yield chunk


def run_pipeline(
    config: StrategyConfig,
    dialogues_path: str,
    output_path: str,
    summaries_path: str | None = None,
    workers: int = 1,
) -> PipelineStats:
    """Stream a dialogue corpus into a pre-training example file.

    Writes to output_path atomically (tempfile + rename); on any error the
    partial output is removed. Returns the run's PipelineStats.
    """
    if workers < 1:
        raise ConfigError(f"workers must be >= 1, got {workers}")
    need_summary = summaries_required(config)
    if need_summary and summaries_path is None:
        raise ConfigError(
            f"strategy {config.strategy.value!r} with selector {config.selector.value!r}"
            " requires --summaries"
        )

    stats = PipelineStats()
    turns_sum = 0
    m_sum = 0
    seen_ids: set[str] = set()
    last_logged = 0
    tmp_path = output_path + ".part"
    out = None

    def handle(result: _ChunkResult) -> None:
        nonlocal turns_sum, m_sum, last_logged
        for record_id in result.ids:
            if record_id in seen_ids:
                raise InputError(f"duplicate dialogue id: {record_id!r}")
            seen_ids.add(record_id)
        for record_id in result.missing:
            logger.warning("dialogue %s has no helper summary; skipped", record_id)
        out.write(result.block)
        stats.dialogues_in += result.dialogues_in
        stats.dropped_short += result.dropped_short
        stats.dropped_missing_summary += result.dropped_missing
        stats.source_counts["G"] += result.g_count
        stats.source_counts["P"] += result.p_count
        stats.examples_out += result.g_count + result.p_count
        stats.copied_turn_total += result.copied_total
        turns_sum += result.turns_sum
        m_sum += result.m_sum
        if stats.dialogues_in - last_logged >= 20000:
            last_logged = stats.dialogues_in
            logger.info("processed %d dialogues", stats.dialogues_in)

    try:
        if workers > 1 and need_summary and summaries_path is not None:
            # surface duplicate summary ids here rather than as a dead pool
            scan_summary_duplicates(summaries_path)
        out = open(tmp_path, "w", encoding="utf-8", newline="\n")
        if workers == 1:
            _init_worker(config.to_dict(), summaries_path)
            for chunk in _iter_chunks(dialogues_path):
                handle(_process_chunk(chunk))
        else:
            with ProcessPoolExecutor(
                max_workers=workers,
                initializer=_init_worker,
                initargs=(config.to_dict(), summaries_path),
            ) as pool:
                pending: deque = deque()
                for chunk in _iter_chunks(dialogues_path):
                    pending.append(pool.submit(_process_chunk, chunk))
                    if len(pending) >= workers * 4:
                        handle(pending.popleft().result())
                while pending:
                    handle(pending.popleft().result())
        out.close()
        out = None
        os.replace(tmp_path, output_path)
    except BaseException:
        if out is not None:
            out.close()
        with suppress(OSError):
            os.remove(tmp_path)
        raise

    if stats.examples_out:
        stats.mean_turns = turns_sum / stats.examples_out
        stats.mean_m = m_sum / stats.examples_out
    if stats.dropped_missing_summary:
        logger.warning(
            "%d dialogue(s) skipped for missing summaries", stats.dropped_missing_summary
        )
    logger.info(
        "wrote %d examples to %s (in=%d short=%d missing=%d)",
        stats.examples_out,
        output_path,
        stats.dialogues_in,
        stats.dropped_short,
        stats.dropped_missing_summary,
    )
    return stats
