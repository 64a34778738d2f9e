"""Logging configuration for the tame lattice toolkit."""

import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

from .config import Config, load_config

FILE_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s"
CONSOLE_FORMAT = "%(levelname)s - %(message)s"

# set on every handler this module installs, so foreign handlers are left alone
_OWNER_ATTR = "_tamelat_log_file"


def _owned_handlers(logger: logging.Logger):
    return [h for h in logger.handlers if hasattr(h, _OWNER_ATTR)]


def close_logger(name: str) -> None:
    """Detach and close the handlers setup_logger installed on ``name``."""
    logger = logging.getLogger(name)
    for handler in _owned_handlers(logger):
        logger.removeHandler(handler)
        handler.close()


def setup_logger(
    name: str,
    config: Optional[Config] = None,
    log_file: Optional[str] = None,
    level: Optional[str] = None,
) -> logging.Logger:
    """
    Set up a logger with a rotating file handler and a stderr console handler.

    Calling it again for the same file only updates the level; a different
    file closes the old handlers first.

    Args:
        name: Logger name
        config: Configuration supplying LOG_FILE and LOG_LEVEL (loaded if None)
        log_file: Overrides the configured log file
        level: Overrides the configured level

    Returns:
        Configured logger instance
    """
    if config is None:
        config = load_config()
    log_file = log_file or config.log_file
    level = (level or config.log_level).upper()

    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, level))

    current = _owned_handlers(logger)
    if current and all(getattr(h, _OWNER_ATTR) == log_file for h in current):
        return logger
    close_logger(name)

    log_path = Path(log_file)
    log_path.parent.mkdir(parents=True, exist_ok=True)

    file_handler = RotatingFileHandler(log_path, maxBytes=1024 * 1024, backupCount=5)  # 1MB
    file_handler.setFormatter(logging.Formatter(FILE_FORMAT))

    # stderr, so JSON reports on stdout stay clean
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(logging.Formatter(CONSOLE_FORMAT))

    for handler in (file_handler, console_handler):
        setattr(handler, _OWNER_ATTR, log_file)
        logger.addHandler(handler)

    return logger


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance."""
    return logging.getLogger(name)
