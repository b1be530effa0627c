"""
Runtime configuration via environment variables.

  COXLIB_WORKERS=1         → threads for classification branches
  COXLIB_MAX_POWER=12      → power bound for the infinite-order relation check
  COXLIB_CULL_EPSILON=1e-9 → default chart-boundary culling threshold (render)
  COXLIB_LOG_LEVEL=WARNING → log level of the command-line tool
  COXLIB_DATABASE_URL=...  → default ``sqlite:PATH`` target of ``coxlib sync``

Invalid values are logged and replaced by the default; they never raise.
"""

import logging
import os

_log = logging.getLogger("coxlib.config")

DEFAULT_WORKERS = 1
DEFAULT_MAX_POWER = 12
DEFAULT_CULL_EPSILON = 1e-9
DEFAULT_LOG_LEVEL = "WARNING"

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _positive_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        _log.warning("Invalid %s=%r, falling back to %d", name, raw, default)
        return default
    if value < 1:
        _log.warning("Invalid %s=%r (must be >= 1), falling back to %d", name, raw, default)
        return default
    return value


def get_workers() -> int:
    """Thread count for classify_integer_classes."""
    return _positive_int("COXLIB_WORKERS", DEFAULT_WORKERS)


def get_max_power() -> int:
    """Largest k tested in (σ_sσ_t)^k ≠ I for nonadjacent pairs."""
    return _positive_int("COXLIB_MAX_POWER", DEFAULT_MAX_POWER)


def get_cull_epsilon() -> float:
    """Default ChartConfig.cull_epsilon."""
    raw = os.environ.get("COXLIB_CULL_EPSILON")
    if raw is None or raw.strip() == "":
        return DEFAULT_CULL_EPSILON
    try:
        value = float(raw)
    except ValueError:
        _log.warning("Invalid COXLIB_CULL_EPSILON=%r, falling back to %g", raw, DEFAULT_CULL_EPSILON)
        return DEFAULT_CULL_EPSILON
    if not value > 0:
        _log.warning("Invalid COXLIB_CULL_EPSILON=%r (must be > 0), falling back", raw)
        return DEFAULT_CULL_EPSILON
    return value


def get_log_level() -> str:
    level = os.environ.get("COXLIB_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper().strip()
    if level not in _LOG_LEVELS:
        _log.warning("Unknown COXLIB_LOG_LEVEL=%r, falling back to %s", level, DEFAULT_LOG_LEVEL)
        return DEFAULT_LOG_LEVEL
    return level


def get_database_url() -> str | None:
    """Return COXLIB_DATABASE_URL, or None if not configured."""
    return os.environ.get("COXLIB_DATABASE_URL") or None
