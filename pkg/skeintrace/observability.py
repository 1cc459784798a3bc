#!/usr/bin/env python3
"""
Skein Trace Observability

Structured JSON logging through structlog, content digests for inputs and
outputs, and the run-level event logger used by the CLI.
"""

import hashlib
import json
import logging
import sys
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

import structlog

SERVICE_NAME = "skein-trace"


def _stderr_logger(*args: Any) -> structlog.PrintLogger:
    # sys.stderr is looked up on every call
    return structlog.PrintLogger(sys.stderr)


def configure_logging(level: str = "INFO", fmt: str = "json") -> None:
    """Configure structlog to write one event per line on stderr"""

    renderer = structlog.processors.JSONRenderer(sort_keys=True) if fmt == "json" \
        else structlog.dev.ConsoleRenderer(colors=False)

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso", utc=True),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            getattr(logging, level.upper(), logging.INFO)
        ),
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )


def canonical_json(payload: Any) -> str:
    """Stable JSON text used for hashing and byte-identical artifacts"""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)


def content_digest(payload: Any) -> str:
    """SHA-256 digest of the canonical JSON form"""
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


def deterministic_run_id(digests: List[str], seed: Optional[int]) -> str:
    """Run id derived from input digests and seed"""
    combined = content_digest({"inputs": digests, "seed": seed})
    return f"RUN-{combined[:8]}-{seed if seed is not None else 0}"


class EventLogger:
    """Run-level structured event logger"""

    def __init__(self):
        self.logger = structlog.get_logger(f"{__name__}.{self.__class__.__name__}")
        self.events: List[Dict[str, Any]] = []

    def log_event(self, run_id: str, step_name: str, event_type: str,
                  message: str, metadata: Optional[Dict[str, Any]] = None):
        """Record an event and emit it as a structured log line"""

        event = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "run_id": run_id,
            "span_id": f"{run_id}-{len(self.events) + 1:04d}",
            "service": SERVICE_NAME,
            "operation": step_name,
            "event_type": event_type,
            "message": message,
            "metadata": metadata or {},
        }
        self.events.append(event)

        log = self.logger.bind(run_id=run_id, span_id=event["span_id"],
                               service=SERVICE_NAME, operation=step_name)
        if event_type.endswith("FAILURE"):
            log.error(message, event_type=event_type, metadata=event["metadata"])
        else:
            log.info(message, event_type=event_type, metadata=event["metadata"])
