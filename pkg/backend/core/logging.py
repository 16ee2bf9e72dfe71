"""
Logging Configuration
=====================

One place that configures the standard-library logging tree.

Every module keeps its own ``logger = logging.getLogger(__name__)``; this
module only installs handlers and formats once, at CLI start-up.
"""

import logging
import logging.config
from typing import Optional

TEXT_FORMAT = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"
KEYVALUE_FORMAT = "ts=%(asctime)s level=%(levelname)s logger=%(name)s %(message)s"


def configure_logging(level: str = "INFO", fmt: Optional[str] = "text") -> None:
    """
    Install a single stderr handler on the root logger.

    Args:
        level: Logging level name (DEBUG, INFO, ...)
        fmt: "text" for human-readable lines, "keyvalue" for grep-friendly lines
    """
    pattern = KEYVALUE_FORMAT if fmt == "keyvalue" else TEXT_FORMAT
    logging.config.dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": {"default": {"format": pattern}},
            "handlers": {
                "stderr": {
                    "class": "logging.StreamHandler",
                    "formatter": "default",
                    "stream": "ext://sys.stderr",
                }
            },
            "root": {"level": level.upper(), "handlers": ["stderr"]},
        }
    )
