"""Structured logging configuration with computation tracking"""

import logging
import sys
import time
import uuid
from contextlib import contextmanager
from typing import Any, Generator, List

import structlog
from structlog.types import Processor

from ..config.models import LogConfig
from .errors import AlgebraError


def setup_logging(config: LogConfig) -> None:
    """Configure structured logging on stderr"""
    handler = logging.StreamHandler(sys.stderr)
    renderer: Processor
    if config.renderer == "json":
        renderer = structlog.processors.JSONRenderer(sort_keys=True)
    else:
        renderer = structlog.dev.ConsoleRenderer(colors=False)
    handler.setFormatter(
        structlog.stdlib.ProcessorFormatter(
            processor=renderer,
            foreign_pre_chain=[
                structlog.stdlib.add_log_level,
                structlog.stdlib.add_logger_name,
                structlog.processors.TimeStamper(fmt="iso"),
            ],
        )
    )

    root = logging.getLogger()
    root.handlers = [handler]
    root.setLevel(getattr(logging, config.level))

    processors: List[Processor] = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_log_level,
        structlog.stdlib.add_logger_name,
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.stdlib.PositionalArgumentsFormatter(),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.UnicodeDecoder(),
        structlog.stdlib.ProcessorFormatter.wrap_for_formatter,
    ]
    structlog.configure(
        processors=processors,
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )


@contextmanager
def computation_context(operation: str, **fields: Any) -> Generator[str, None, None]:
    """Bind an operation name and correlation id to every log line in scope"""
    computation_id = uuid.uuid4().hex[:8]
    logger = get_logger("computation")
    start = time.perf_counter()
    with structlog.contextvars.bound_contextvars(
        operation=operation, computation_id=computation_id, **fields
    ):
        logger.debug("started")
        try:
            yield computation_id
        except AlgebraError as exc:
            logger.debug("failed", code=exc.code, elapsed=time.perf_counter() - start)
            raise
        logger.debug("finished", elapsed=round(time.perf_counter() - start, 6))


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """Get a logger instance"""
    return structlog.get_logger(name)
