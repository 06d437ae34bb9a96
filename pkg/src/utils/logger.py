"""Logging configuration for the GJPS homology engine.

This module sets up application-wide logging with file rotation and
configurable log levels. Console output goes to stderr so that reports
printed on stdout stay machine-readable.
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from typing import Optional

from .config import (
    LOG_PATH,
    LOG_LEVEL,
    LOG_FORMAT,
    LOG_DATE_FORMAT,
    MAX_LOG_SIZE,
    LOG_BACKUP_COUNT,
)

ROOT_LOGGER_NAME = "gjps_homology"


def setup_logger(
    name: str,
    log_file: Optional[str] = None,
    level: Optional[str] = None,
) -> logging.Logger:
    """Set up a logger with file and console handlers.

    Module loggers (``src.core.*``) propagate to the application logger,
    so only the application logger owns handlers.

    Args:
        name: Logger name (usually __name__ of the calling module)
        log_file: Optional log file name (default: <name>.log)
        level: Optional log level (default: from config.LOG_LEVEL)

    Returns:
        Configured logger instance

    Example:
        >>> logger = setup_logger(__name__)
        >>> logger.info("Engine started")
    """
    logger = logging.getLogger(name)

    log_level = getattr(logging, level or LOG_LEVEL, logging.WARNING)
    logger.setLevel(log_level)

    # Avoid duplicate handlers
    if logger.handlers:
        return logger

    formatter = logging.Formatter(LOG_FORMAT, datefmt=LOG_DATE_FORMAT)

    # Console handler (stderr)
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    # File handler with rotation
    if log_file is None:
        log_file = f"{name.replace('.', '_')}.log"

    try:
        LOG_PATH.mkdir(parents=True, exist_ok=True)
        log_path = LOG_PATH / log_file
        file_handler = RotatingFileHandler(
            log_path,
            maxBytes=MAX_LOG_SIZE,
            backupCount=LOG_BACKUP_COUNT,
            encoding='utf-8',
        )
    except OSError as e:
        logger.warning(f"File logging disabled, cannot write to {LOG_PATH}: {e}")
        return logger

    file_handler.setLevel(log_level)
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)

    logger.debug(f"Logger initialized: {name} (level={LOG_LEVEL}, file={log_path})")

    return logger


def get_logger(name: str) -> logging.Logger:
    """Get a module logger that reports through the application logger.

    Args:
        name: Logger name (usually __name__)

    Returns:
        Logger instance

    Example:
        >>> logger = get_logger(__name__)
        >>> logger.info("Computing slice")
    """
    logger = logging.getLogger(f"{ROOT_LOGGER_NAME}.{name}")
    logger.setLevel(logging.NOTSET)
    return logger


def set_log_level(level: str) -> None:
    """Change the level of the application logger and its handlers.

    Args:
        level: Level name (DEBUG, INFO, WARNING, ERROR, CRITICAL)
    """
    log_level = getattr(logging, level.upper(), logging.WARNING)
    app_logger.setLevel(log_level)
    for handler in app_logger.handlers:
        handler.setLevel(log_level)


# Application-wide logger
app_logger = setup_logger(ROOT_LOGGER_NAME, log_file="gjps_homology.log")
