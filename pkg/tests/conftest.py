"""Shared fixtures and the acceptance-criteria result banner."""

import json

import pytest

from turngist import GeneratedSummary

from corpus_helpers import make_dialogue

# One PASS/FAIL line per acceptance check, printed after the run.
_ACCEPTANCE_PREFIX = "tests/test_acceptance.py"
_acceptance_results: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if not report.nodeid.startswith(_ACCEPTANCE_PREFIX):
        return
    name = report.nodeid.split("::", 1)[1]
    if report.when == "call":
        _acceptance_results[name] = report.outcome
    elif report.when == "setup" and report.outcome != "passed":
        _acceptance_results[name] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_results.items():
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[acceptance] {name}: {status}")


@pytest.fixture
def write_ndjson(tmp_path):
    def _write(name, records):
        path = tmp_path / name
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            for record in records:
                handle.write(json.dumps(record, ensure_ascii=False) + "\n")
        return str(path)

    return _write


@pytest.fixture
def three_turn():
    dialogue = make_dialogue("fx3", ["alpha beta", "gamma delta", "alpha beta gamma"])
    summary = GeneratedSummary(dialogue_id="fx3", text="alpha beta gamma")
    return dialogue, summary


@pytest.fixture
def arbitration_pair():
    dialogue = make_dialogue("fxarb", ["a b", "c d", "a b c d"])
    summary = GeneratedSummary(dialogue_id="fxarb", text="a b")
    return dialogue, summary
