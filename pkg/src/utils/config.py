"""Application configuration and constants.

This module contains all application-wide configuration settings and
default limits used throughout the GJPS homology engine.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Dict

# Application metadata
APP_NAME = "GJPS Homology"
APP_VERSION = "1.0.0"

# Application directories
APP_DIR = Path(os.environ.get("GJPS_HOME", Path.home() / ".gjps-homology"))
LOG_PATH = APP_DIR / "logs"
CONFIG_FILE = APP_DIR / "config.json"

# Computation defaults
DEFAULT_MAX_GRADE = 15
MAX_SUPPORTED_GRADE = 60  # slices beyond this are refused
DEFAULT_REGULARITY_BOUND = 12
DEFAULT_LEMMA_BOUND = 10
DEFAULT_MODULAR_CHECK_DEGREE = 5
# Extra grades past the socle cutoff scanned before declaring isolation
DEFAULT_ISOLATION_WINDOW = 6

# Parallelism (1 = serial)
DEFAULT_MAX_WORKERS = 1
MAX_WORKERS_ENV = "GJPS_MAX_WORKERS"

# Logging configuration
LOG_LEVEL = os.environ.get("GJPS_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
MAX_LOG_SIZE = 10 * 1024 * 1024  # 10 MB
LOG_BACKUP_COUNT = 5


def max_workers_from_env() -> int:
    """Read the parallelism cap from the environment.

    Returns:
        Number of worker processes, at least 1
    """
    raw = os.environ.get(MAX_WORKERS_ENV)
    if not raw:
        return DEFAULT_MAX_WORKERS
    try:
        return max(1, int(raw))
    except ValueError:
        logging.getLogger(__name__).warning(
            f"Ignoring non-integer {MAX_WORKERS_ENV}={raw!r}"
        )
        return DEFAULT_MAX_WORKERS


def load_settings() -> Dict[str, Any]:
    """Load user settings from config file.

    Returns:
        Dictionary of user settings with defaults applied
    """
    # Default settings
    defaults: Dict[str, Any] = {
        'engine': {
            'max_workers': max_workers_from_env(),
        },
    }

    # Load existing config
    try:
        if CONFIG_FILE.exists():
            with open(CONFIG_FILE, 'r') as f:
                saved_config = json.load(f)
                # Merge with defaults (saved values override defaults)
                for section, values in saved_config.items():
                    if section in defaults and isinstance(values, dict):
                        defaults[section].update(values)
                    else:
                        defaults[section] = values
    except Exception as e:
        logger = logging.getLogger(__name__)
        logger.warning(f"Failed to load config file: {e}")

    return defaults
