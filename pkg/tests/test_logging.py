"""
Tests for logging setup and the JSON-lines event log.
"""

import json
import logging
import logging.handlers
import uuid

from ihull_logging import EventLog, setup_logging


def unique_name():
    """Fresh logger name per test so handlers never leak between tests."""
    return f"ihull.test.{uuid.uuid4().hex}"


class TestSetupLogging:
    """Tests for setup_logging."""

    def test_console_handler_only_by_default(self):
        logger, events = setup_logging(unique_name())
        assert events is None
        assert len(logger.handlers) == 1
        assert logger.level == logging.WARNING

    def test_idempotent(self):
        name = unique_name()
        setup_logging(name)
        logger, _ = setup_logging(name, level=logging.DEBUG)
        assert len(logger.handlers) == 1
        assert logger.level == logging.DEBUG
        assert logger.handlers[0].level == logging.DEBUG

    def test_rotating_file(self, tmp_path):
        log_file = tmp_path / "logs" / "ihull.log"
        logger, _ = setup_logging(unique_name(), level=logging.INFO, log_file=log_file)
        assert any(isinstance(h, logging.handlers.RotatingFileHandler) for h in logger.handlers)
        logger.info("hull has %d elements", 10)
        for h in logger.handlers:
            h.flush()
        assert "hull has 10 elements" in log_file.read_text(encoding="utf-8")

    def test_event_log_created(self, tmp_path):
        _, events = setup_logging(unique_name(), events_file=tmp_path / "ev" / "events.jsonl")
        assert events is not None
        assert events.path.parent.is_dir()


class TestEventLog:
    """Tests for EventLog.event."""

    def test_one_json_object_per_line(self, tmp_path, mocker):
        log = EventLog(tmp_path / "events.jsonl", "s1", mocker.Mock())
        log.event("run_start", command="verify")
        log.event("suite_passed", suite="hull-closure", detail="10 elements")
        lines = (tmp_path / "events.jsonl").read_text(encoding="utf-8").splitlines()
        first, second = (json.loads(line) for line in lines)
        assert first["kind"] == "run_start"
        assert first["command"] == "verify"
        assert second["suite"] == "hull-closure"
        assert {"ts", "session_id", "pid"} <= set(second)

    def test_unserializable_values_become_strings(self, tmp_path, mocker):
        log = EventLog(tmp_path / "events.jsonl", "s1", mocker.Mock())
        log.event("note", members=frozenset({1}))
        record = json.loads((tmp_path / "events.jsonl").read_text(encoding="utf-8"))
        assert record["members"] == "frozenset({1})"

    def test_write_failure_is_logged(self, tmp_path, mocker):
        plain = mocker.Mock()
        log = EventLog(tmp_path / "missing" / "events.jsonl", "s1", plain)
        log.event("run_start")
        plain.error.assert_called_once()
