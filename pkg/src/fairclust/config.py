"""
Runtime configuration for fairclust

Values come from the environment (a .env file in the working directory is loaded first)
and fall back to the defaults below.

Environment:
  FAIRCLUST_ORACLE_LIMIT   largest n the exhaustive oracles accept (default 13, ceiling 15)
  FAIRCLUST_LOG_LEVEL      DEBUG, INFO, WARNING, ERROR (default INFO)
  FAIRCLUST_BENCH_WORKERS  worker threads used by `fairclust bench` (default 1)
  FAIRCLUST_SEED           default seed for generators and the pivot baseline (default 0)
"""
import logging
import os
from typing import Dict, List

from dotenv import load_dotenv

from .errors import ValidationError

load_dotenv()

logger = logging.getLogger(__name__)

# Oracle guard: Bell(13) is about 2.7e7 partitions
DEFAULT_ORACLE_LIMIT = 13
ORACLE_LIMIT_CEILING = 15

# Pair counts are exact 64-bit integers; C(n, 2) must not overflow
MAX_POINTS = 2 ** 32

LOG_LEVEL = os.environ.get("FAIRCLUST_LOG_LEVEL", "INFO").upper()
BENCH_WORKERS = int(os.environ.get("FAIRCLUST_BENCH_WORKERS", "1"))
DEFAULT_SEED = int(os.environ.get("FAIRCLUST_SEED", "0"))

# File format settings
CSV_ENCODING = "utf-8"
CSV_LINE_TERMINATOR = "\n"


def get_oracle_limit() -> int:
    """Return the active oracle guard, re-reading FAIRCLUST_ORACLE_LIMIT each call."""
    raw = os.environ.get("FAIRCLUST_ORACLE_LIMIT")
    if raw is None or raw.strip() == "":
        return DEFAULT_ORACLE_LIMIT
    try:
        limit = int(raw)
    except ValueError:
        raise ValidationError(f"FAIRCLUST_ORACLE_LIMIT must be an integer, got {raw!r}")
    if limit < 0 or limit > ORACLE_LIMIT_CEILING:
        raise ValidationError(
            f"FAIRCLUST_ORACLE_LIMIT must lie in 0..{ORACLE_LIMIT_CEILING}, got {limit}"
        )
    return limit


def get_log_level() -> int:
    """Map FAIRCLUST_LOG_LEVEL to a logging level, INFO when unknown."""
    return getattr(logging, LOG_LEVEL, logging.INFO)


def current_settings() -> Dict[str, object]:
    """Snapshot of the active settings, for `fairclust config`."""
    try:
        oracle_limit = get_oracle_limit()
    except ValueError as e:
        oracle_limit = f"invalid ({e})"
    return {
        "oracle_limit": oracle_limit,
        "oracle_limit_ceiling": ORACLE_LIMIT_CEILING,
        "log_level": LOG_LEVEL,
        "bench_workers": BENCH_WORKERS,
        "default_seed": DEFAULT_SEED,
        "max_points": MAX_POINTS,
    }


def validate_config() -> bool:
    """
    Validate configuration settings
    Returns True if valid, False otherwise
    """
    errors: List[str] = []

    try:
        get_oracle_limit()
    except ValueError as e:
        errors.append(str(e))

    if LOG_LEVEL not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        errors.append(f"FAIRCLUST_LOG_LEVEL must be a logging level name, got {LOG_LEVEL!r}")

    if BENCH_WORKERS < 1:
        errors.append(f"FAIRCLUST_BENCH_WORKERS must be at least 1, got {BENCH_WORKERS}")

    if DEFAULT_SEED < 0:
        errors.append(f"FAIRCLUST_SEED must be non-negative, got {DEFAULT_SEED}")

    if errors:
        for error in errors:
            logger.error(f"Configuration error: {error}")
        return False

    return True
