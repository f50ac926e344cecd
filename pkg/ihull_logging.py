"""Logging setup and structured event log for the ihull workbench.

Reports are written to stdout; everything here goes to stderr or to files,
so enabling logs never changes a report.

Public API:

    setup_logging(name="ihull", ...)   -> (logging.Logger, EventLog | None)
    EventLog.event(kind, **fields)     -> one JSON object per line

Both files are optional and configured in config/ihull.yaml:

    logging:
      file: ihull.log          rotating plaintext log, 5 MB x 3 files
      events: events.jsonl     verification events, easy grep / jq
"""

from __future__ import annotations

import json
import logging
import logging.handlers
import os
import threading
import uuid
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

DEFAULT_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"


class EventLog:
    """Append-only JSON-lines emitter, thread-safe.

    Each line is one JSON object with at minimum: ts, session_id, pid, kind.
    Additional fields come from caller kwargs. Never raises on write failure
    (logs the failure to the plaintext logger instead).
    """

    def __init__(self, path: Path, session_id: str, plain_logger: logging.Logger):
        self.path = path
        self.session_id = session_id
        self._lock = threading.Lock()
        self._plain = plain_logger

    def event(self, kind: str, **fields: Any) -> None:
        record = {
            "ts": datetime.now(timezone.utc).isoformat(),
            "session_id": self.session_id,
            "pid": os.getpid(),
            "kind": kind,
            **fields,
        }
        try:
            line = json.dumps(record, default=str, ensure_ascii=False, sort_keys=True)
        except (TypeError, ValueError) as e:
            self._plain.error("EventLog json.dumps failed for kind=%s: %s", kind, e)
            return
        try:
            with self._lock:
                with self.path.open("a", encoding="utf-8") as f:
                    f.write(line + "\n")
        except OSError as e:
            self._plain.error("EventLog write failed: %s", e)


def setup_logging(
    name: str = "ihull",
    level: int = logging.WARNING,
    fmt: str = DEFAULT_FORMAT,
    log_file: str | Path | None = None,
    events_file: str | Path | None = None,
) -> tuple[logging.Logger, EventLog | None]:
    """Configure the package logger. Returns (logger, event_log).

    Idempotent: a second call adjusts the level but adds no handlers.
    """
    logger = logging.getLogger(name)
    logger.setLevel(level)

    if not any(getattr(h, "_ihull_marker", False) for h in logger.handlers):
        formatter = logging.Formatter(fmt)

        console_h = logging.StreamHandler()
        console_h.setFormatter(formatter)
        console_h._ihull_marker = True  # type: ignore[attr-defined]
        logger.addHandler(console_h)

        if log_file is not None:
            Path(log_file).parent.mkdir(parents=True, exist_ok=True)
            file_h = logging.handlers.RotatingFileHandler(
                log_file, maxBytes=5 * 1024 * 1024, backupCount=3, encoding="utf-8",
            )
            file_h.setFormatter(formatter)
            file_h._ihull_marker = True  # type: ignore[attr-defined]
            logger.addHandler(file_h)

    for handler in logger.handlers:
        if getattr(handler, "_ihull_marker", False):
            handler.setLevel(level)

    event_log = None
    if events_file is not None:
        events_path = Path(events_file)
        events_path.parent.mkdir(parents=True, exist_ok=True)
        event_log = EventLog(events_path, str(uuid.uuid4()), logger)

    return logger, event_log
