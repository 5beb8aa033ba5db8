"""Fixtures wiring the mock endpoint into tests."""

import json

import pytest

from mockserver import MockEndpoint


@pytest.fixture
def endpoint():
    mock = MockEndpoint()
    yield mock
    mock.close()


@pytest.fixture
def write_dialogues(tmp_path):
    def write(records, name="dialogues.jsonl"):
        path = tmp_path / name
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            for record in records:
                handle.write(json.dumps(record, ensure_ascii=False) + "\n")
        return str(path)

    return write
