"""NDJSON record schemas and streaming readers.

Three record shapes, one JSON object per line, UTF-8, LF line endings:

dialogues:  {"id": str, "turns": [{"speaker": str | null (optional), "text": str}, ...]}
summaries:  {"id": str, "summary": str}
examples:   {"id": str, "input": str, "target": str, "source": "G" | "P", "copied": [int, ...]}

Readers are strict about required keys and types (unknown keys are ignored)
and report the file and line of the first violation. Writers emit compact
records with a trailing newline after every record including the last.
"""

from __future__ import annotations

import json
from collections.abc import Iterator
from typing import Any

from .errors import InputError
from .model import Dialogue, GeneratedSummary, TrainingExample, Turn

__all__ = [
    "iter_ndjson",
    "parse_dialogue_obj",
    "parse_summary_obj",
    "parse_example_obj",
    "read_dialogues",
    "read_summaries",
    "load_summary_map",
    "scan_summary_duplicates",
    "dialogue_to_dict",
    "summary_to_dict",
    "example_to_dict",
    "dumps_record",
]


def iter_ndjson(path: str) -> Iterator[tuple[int, Any]]:
    """Yield (line_number, parsed_object) for every non-blank line."""
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                yield line_no, json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"{path}: line {line_no}: invalid JSON: {exc}") from None


def _require_str(obj: dict, key: str, where: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str):
        raise InputError(f"{where}: {key!r} must be a string, got {type(value).__name__}")
    return value


def parse_dialogue_obj(obj: Any, where: str = "dialogue record") -> Dialogue:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected a JSON object, got {type(obj).__name__}")
    record_id = _require_str(obj, "id", where)
    if not record_id:
        raise InputError(f"{where}: 'id' must be non-empty")
    raw_turns = obj.get("turns")
    if not isinstance(raw_turns, list):
        raise InputError(f"{where}: 'turns' must be a list")
    turns = []
    for i, raw in enumerate(raw_turns):
        if not isinstance(raw, dict):
            raise InputError(f"{where}: turn {i} must be an object")
        text = raw.get("text")
        if not isinstance(text, str):
            raise InputError(f"{where}: turn {i}: 'text' must be a string")
        speaker = raw.get("speaker")
        if speaker is not None and not isinstance(speaker, str):
            raise InputError(f"{where}: turn {i}: 'speaker' must be a string or null")
        turns.append(Turn(text=text, speaker=speaker))
    return Dialogue(id=record_id, turns=tuple(turns))


def parse_summary_obj(obj: Any, where: str = "summary record") -> GeneratedSummary:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected a JSON object, got {type(obj).__name__}")
    record_id = _require_str(obj, "id", where)
    if not record_id:
        raise InputError(f"{where}: 'id' must be non-empty")
    return GeneratedSummary(dialogue_id=record_id, text=_require_str(obj, "summary", where))


def parse_example_obj(obj: Any, where: str = "example record") -> TrainingExample:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected a JSON object, got {type(obj).__name__}")
    record_id = _require_str(obj, "id", where)
    source = _require_str(obj, "source", where)
    copied = obj.get("copied")
    if not isinstance(copied, list) or any(not isinstance(i, int) for i in copied):
        raise InputError(f"{where}: 'copied' must be a list of integers")
    return TrainingExample(
        dialogue_id=record_id,
        input_text=_require_str(obj, "input", where),
        target_text=_require_str(obj, "target", where),
        source=source,
        copied_turn_indices=tuple(copied),
    )


def read_dialogues(path: str) -> Iterator[Dialogue]:
    for line_no, obj in iter_ndjson(path):
        yield parse_dialogue_obj(obj, f"{path}: line {line_no}")


def read_summaries(path: str) -> Iterator[GeneratedSummary]:
    for line_no, obj in iter_ndjson(path):
        yield parse_summary_obj(obj, f"{path}: line {line_no}")


def load_summary_map(path: str) -> dict[str, str]:
    """Load summaries keyed by dialogue id; duplicate ids are an error."""
    summaries: dict[str, str] = {}
    for line_no, obj in iter_ndjson(path):
        record = parse_summary_obj(obj, f"{path}: line {line_no}")
        if record.dialogue_id in summaries:
            raise InputError(
                f"duplicate summary id: {record.dialogue_id!r} ({path}: line {line_no})"
            )
        summaries[record.dialogue_id] = record.text
    return summaries


def scan_summary_duplicates(path: str) -> None:
    """Validate summary ids without keeping the texts around."""
    seen: set[str] = set()
    for line_no, obj in iter_ndjson(path):
        record = parse_summary_obj(obj, f"{path}: line {line_no}")
        if record.dialogue_id in seen:
            raise InputError(
                f"duplicate summary id: {record.dialogue_id!r} ({path}: line {line_no})"
            )
        seen.add(record.dialogue_id)


def dialogue_to_dict(dialogue: Dialogue) -> dict[str, Any]:
    turns = []
    for turn in dialogue.turns:
        raw: dict[str, Any] = {"text": turn.text}
        if turn.speaker is not None:
            raw["speaker"] = turn.speaker
        turns.append(raw)
    return {"id": dialogue.id, "turns": turns}


def summary_to_dict(summary: GeneratedSummary) -> dict[str, Any]:
    return {"id": summary.dialogue_id, "summary": summary.text}


def example_to_dict(example: TrainingExample) -> dict[str, Any]:
    return {
        "id": example.dialogue_id,
        "input": example.input_text,
        "target": example.target_text,
        "source": example.source,
        "copied": list(example.copied_turn_indices),
    }


def dumps_record(record: dict[str, Any]) -> str:
    """Compact, non-ascii-preserving JSON for one NDJSON line (no newline)."""
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"))
