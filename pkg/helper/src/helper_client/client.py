"""Batch client that turns a dialogue corpus into a helper summary file.

Wire protocol: POST {"texts": [...], "max_length"?: int} to the endpoint,
which answers {"summaries": [...]} aligned with the request. Any service
that can wrap a summarization model behind that shape works as a backend.

Input and output files use the corpus schemas: dialogue records
{"id", "turns": [{"speaker"?, "text"}]} in, summary records
{"id", "summary"} out, one JSON object per line, order preserved.
"""

import json
import logging
import os
import time

import requests

from helper_client.errors import ConfigError, InputError, ProtocolError, TransportError

logger = logging.getLogger(__name__)


def render_dialogue(record: dict) -> str:
    """Newline-joined turn text, speaker-prefixed where a speaker is given."""
    lines = []
    for turn in record["turns"]:
        text = turn.get("text", "")
        if not text.strip():
            continue
        speaker = turn.get("speaker")
        lines.append(f"{speaker}: {text}" if speaker else text)
    return "\n".join(lines)


def stub_summarize(record: dict) -> dict:
    """Offline stand-in for the endpoint: the longest turn wins, ties go
    to the earliest. Lets downstream tooling run without any service."""
    best = ""
    for turn in record["turns"]:
        text = turn.get("text", "")
        if len(text) > len(best):
            best = text
    return {"id": record["id"], "summary": best}


def read_dialogues(path):
    """Yield (id, rendered_text) per record, validating as it goes."""
    seen = set()
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            where = f"{path}: line {line_no}"
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputError(f"{where}: invalid JSON: {exc.msg}") from None
            if not isinstance(obj, dict):
                raise InputError(f"{where}: record must be an object")
            record_id = obj.get("id")
            if not isinstance(record_id, str) or not record_id:
                raise InputError(f"{where}: 'id' must be a non-empty string")
            if record_id in seen:
                raise InputError(f"{where}: duplicate dialogue id: {record_id!r}")
            seen.add(record_id)
            turns = obj.get("turns")
            if not isinstance(turns, list):
                raise InputError(f"{where}: 'turns' must be a list")
            for i, turn in enumerate(turns):
                if not isinstance(turn, dict):
                    raise InputError(f"{where}: turn {i} must be an object")
                if not isinstance(turn.get("text"), str):
                    raise InputError(f"{where}: turn {i}: 'text' must be a string")
                speaker = turn.get("speaker")
                if speaker is not None and not isinstance(speaker, str):
                    raise InputError(f"{where}: turn {i}: 'speaker' must be a string or null")
            text = render_dialogue(obj)
            if not text:
                raise InputError(f"{where}: dialogue {record_id!r} has no text to summarize")
            yield record_id, text


def _describe(ids) -> str:
    return f"batch [{', '.join(ids)}]"


def _parse_response(response, ids):
    try:
        body = response.json()
    except ValueError:
        raise ProtocolError(f"{_describe(ids)}: response is not valid JSON") from None
    summaries = body.get("summaries") if isinstance(body, dict) else None
    if not isinstance(summaries, list) or not all(isinstance(s, str) for s in summaries):
        raise ProtocolError(f"{_describe(ids)}: response lacks a 'summaries' string list")
    if len(summaries) != len(ids):
        raise ProtocolError(
            f"{_describe(ids)}: endpoint returned {len(summaries)} summaries"
            f" for {len(ids)} texts"
        )
    return summaries


def _post_batch(session, endpoint_url, texts, ids, max_length, retries,
                backoff_seconds, timeout_seconds):
    payload = {"texts": texts}
    if max_length is not None:
        payload["max_length"] = max_length
    attempts = retries + 1
    delay = backoff_seconds
    last_error = "no attempt made"
    for attempt in range(1, attempts + 1):
        if attempt > 1:
            time.sleep(delay)
            delay *= 2.0
        try:
            response = session.post(endpoint_url, json=payload, timeout=timeout_seconds)
        except (requests.ConnectionError, requests.Timeout) as exc:
            last_error = type(exc).__name__
            logger.warning("%s attempt %d/%d: %s", _describe(ids), attempt, attempts, last_error)
            continue
        if response.status_code == 200:
            return _parse_response(response, ids)
        if response.status_code >= 500 or response.status_code == 429:
            last_error = f"HTTP {response.status_code}"
            logger.warning("%s attempt %d/%d: %s", _describe(ids), attempt, attempts, last_error)
            continue
        raise ProtocolError(f"{_describe(ids)}: endpoint rejected it: HTTP {response.status_code}")
    raise TransportError(f"{_describe(ids)} failed after {attempts} attempts: {last_error}")


def generate_summaries(dialogue_path, endpoint_url, output_path, *,
                       batch_size=16, retries=3, max_length=None,
                       backoff_seconds=0.5, timeout_seconds=30.0) -> int:
    """Summarize every dialogue in dialogue_path through the endpoint.

    Posts batch_size texts at a time, retrying transient failures
    (connection errors, timeouts, HTTP 5xx and 429) with exponential
    backoff. Other HTTP errors and contract violations abort immediately.
    The output file appears atomically on success and never partially.
    Returns the number of summary records written.
    """
    if batch_size < 1:
        raise ConfigError(f"batch_size must be >= 1, got {batch_size}")
    if retries < 0:
        raise ConfigError(f"retries must be >= 0, got {retries}")
    if max_length is not None and max_length < 1:
        raise ConfigError(f"max_length must be >= 1, got {max_length}")
    if backoff_seconds < 0:
        raise ConfigError(f"backoff_seconds must be >= 0, got {backoff_seconds}")

    tmp_path = output_path + ".part"
    count = 0
    session = requests.Session()
    try:
        with open(tmp_path, "w", encoding="utf-8", newline="\n") as out:

            def flush(ids, texts):
                nonlocal count
                summaries = _post_batch(session, endpoint_url, texts, ids, max_length,
                                        retries, backoff_seconds, timeout_seconds)
                for record_id, summary in zip(ids, summaries):
                    record = {"id": record_id, "summary": summary}
                    out.write(json.dumps(record, ensure_ascii=False, separators=(",", ":")) + "\n")
                count += len(ids)

            batch_ids = []
            batch_texts = []
            for record_id, text in read_dialogues(dialogue_path):
                batch_ids.append(record_id)
                batch_texts.append(text)
                if len(batch_ids) == batch_size:
                    flush(batch_ids, batch_texts)
                    batch_ids, batch_texts = [], []
            if batch_ids:
                flush(batch_ids, batch_texts)
    except BaseException:
        session.close()
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    session.close()
    os.replace(tmp_path, output_path)
    logger.info("wrote %d summaries to %s", count, output_path)
    return count
