"""
Logging setup for fairclust

Library modules log through logging.getLogger(__name__) and never touch handlers. The
command line installs them once via setup_logging(): a stderr console (colored on a TTY)
and, on request, a daily file under ./logs.

Usage:
    from fairclust.logging_config import get_logger, setup_logging

    setup_logging(log_level=logging.DEBUG, log_to_file=True)
    logger = get_logger(__name__)
    log_operation(logger, "fairify", "success", 12.5, n=400)
"""

import logging
import sys
from datetime import date
from pathlib import Path
from typing import Dict, Optional

DEFAULT_FORMAT = "%(asctime)s %(levelname)s [%(name)s:%(lineno)d] %(message)s"

_RESET = "\033[0m"


class ColoredFormatter(logging.Formatter):
    """Console formatter that wraps the level name in an ANSI color."""

    LEVEL_COLORS: Dict[int, str] = {
        logging.DEBUG: "\033[36m",
        logging.INFO: "\033[32m",
        logging.WARNING: "\033[33m",
        logging.ERROR: "\033[31m",
        logging.CRITICAL: "\033[35m",
    }

    def format(self, record: logging.LogRecord) -> str:
        color = self.LEVEL_COLORS.get(record.levelno)
        if color is None:
            return super().format(record)
        # a file handler may format the same record after us
        tinted = logging.makeLogRecord(record.__dict__)
        tinted.levelname = f"{color}{record.levelname}{_RESET}"
        return super().format(tinted)


def _daily_log_path(log_dir: Path, prefix: str) -> Path:
    return log_dir / f"{prefix}_{date.today():%Y%m%d}.log"


class FairclustLogger:
    """Process-wide handler configuration; setup() is a no-op until reset()."""

    _initialized = False
    _loggers: Dict[str, logging.Logger] = {}

    @classmethod
    def setup(
        cls,
        log_level: int = logging.INFO,
        log_to_file: bool = False,
        log_to_console: bool = True,
        log_dir: Optional[str] = None,
        log_filename_prefix: str = "fairclust",
        enable_colors: bool = True,
        format_string: Optional[str] = None,
    ) -> None:
        """
        Install handlers on the root logger.

        Args:
            log_level: level for the root logger and every handler
            log_to_file: append to <log_dir>/<prefix>_YYYYMMDD.log
            log_to_console: write to stderr
            log_dir: defaults to ./logs
            log_filename_prefix: file name prefix of the daily log
            enable_colors: color level names when stderr is a TTY
            format_string: record format, DEFAULT_FORMAT when omitted
        """
        if cls._initialized:
            return

        fmt = format_string or DEFAULT_FORMAT
        root = logging.getLogger()
        root.setLevel(log_level)
        root.handlers.clear()

        if log_to_file:
            directory = Path(log_dir) if log_dir else Path.cwd() / "logs"
            directory.mkdir(parents=True, exist_ok=True)
            path = _daily_log_path(directory, log_filename_prefix)
            file_handler = logging.FileHandler(path, mode="a", encoding="utf-8")
            file_handler.setLevel(log_level)
            file_handler.setFormatter(logging.Formatter(fmt))
            root.addHandler(file_handler)
            root.debug("log file %s", path)

        if log_to_console:
            console = logging.StreamHandler(sys.stderr)
            console.setLevel(log_level)
            colored = enable_colors and sys.stderr.isatty()
            console.setFormatter(ColoredFormatter(fmt) if colored else logging.Formatter(fmt))
            root.addHandler(console)

        cls._initialized = True

    @classmethod
    def reset(cls) -> None:
        logging.getLogger().handlers.clear()
        cls._initialized = False

    @classmethod
    def get_logger(cls, name: str) -> logging.Logger:
        return cls._loggers.setdefault(name, logging.getLogger(name))

    @classmethod
    def log_exception(
        cls,
        logger: logging.Logger,
        exception: Exception,
        context: Optional[str] = None,
        **kwargs,
    ) -> None:
        """Log an ERROR record describing the exception; the traceback only at DEBUG."""
        details = {
            "type": type(exception).__name__,
            "message": str(exception),
            "context": context or "-",
            **kwargs,
        }
        logger.error(
            "Exception in %s: %s",
            details["context"],
            details,
            exc_info=logger.isEnabledFor(logging.DEBUG),
            extra={"error_details": details},
        )

    @classmethod
    def log_operation(
        cls,
        logger: logging.Logger,
        operation_name: str,
        status: str,
        duration_ms: Optional[float] = None,
        **kwargs,
    ) -> None:
        """
        One summary record per operation.

        status "success" logs at INFO, "failure" at ERROR, anything else at WARNING.
        """
        fields = {"operation": operation_name, "status": status}
        if duration_ms is not None:
            fields["duration_ms"] = round(duration_ms, 3)
        fields.update(kwargs)
        summary = " ".join(f"{key}={value}" for key, value in fields.items())

        outcome = status.lower()
        if outcome == "success":
            logger.info("Operation completed: %s", summary)
        elif outcome == "failure":
            logger.error("Operation failed: %s", summary)
        else:
            logger.warning("Operation finished with warnings: %s", summary)


def setup_logging(**kwargs) -> None:
    FairclustLogger.setup(**kwargs)


def get_logger(name: str = __name__) -> logging.Logger:
    return FairclustLogger.get_logger(name)


def log_exception(logger: logging.Logger, exception: Exception, context: Optional[str] = None, **kwargs) -> None:
    FairclustLogger.log_exception(logger, exception, context, **kwargs)


def log_operation(
    logger: logging.Logger, operation_name: str, status: str, duration_ms: Optional[float] = None, **kwargs
) -> None:
    FairclustLogger.log_operation(logger, operation_name, status, duration_ms, **kwargs)
