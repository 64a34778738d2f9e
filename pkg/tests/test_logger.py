"""Tests for logging configuration."""

import logging
import os
from unittest.mock import patch
from src.config import Config
from src.logger import close_logger, setup_logger
from src.main_app import TameLatticeToolkit


class TestSetupLogger:
    """Test cases for setup_logger."""

    def test_file_and_level_from_config(self, tmp_path):
        """Test that LOG_FILE and LOG_LEVEL come from the configuration."""
        config = Config(log_file=str(tmp_path / "logs" / "run.log"), log_level="debug")
        logger = setup_logger("tamelat.test.config", config)
        try:
            logger.debug("written")

            assert logger.level == logging.DEBUG
            assert (tmp_path / "logs" / "run.log").exists()
        finally:
            close_logger("tamelat.test.config")

    def test_repeated_setup_reuses_handlers(self, tmp_path):
        """Test that a second call for the same file adds nothing."""
        config = Config(log_file=str(tmp_path / "run.log"))
        first = list(setup_logger("tamelat.test.reuse", config).handlers)
        try:
            second = setup_logger("tamelat.test.reuse", config).handlers

            assert len(first) == 2
            assert second == first
        finally:
            close_logger("tamelat.test.reuse")

    def test_new_file_closes_old_handlers(self, tmp_path):
        """Test that switching files closes the previous file handler."""
        name = "tamelat.test.switch"
        logger = setup_logger(name, Config(log_file=str(tmp_path / "a.log")))
        old_file = next(h for h in logger.handlers if isinstance(h, logging.FileHandler))
        try:
            setup_logger(name, Config(log_file=str(tmp_path / "b.log")))

            assert old_file not in logger.handlers
            assert old_file.stream is None
            assert len(logger.handlers) == 2
        finally:
            close_logger(name)

    def test_foreign_handlers_kept(self, tmp_path):
        """Test that handlers installed elsewhere survive setup and close."""
        name = "tamelat.test.foreign"
        logger = logging.getLogger(name)
        foreign = logging.NullHandler()
        logger.addHandler(foreign)
        try:
            setup_logger(name, Config(log_file=str(tmp_path / "a.log")))
            close_logger(name)

            assert logger.handlers == [foreign]
        finally:
            logger.removeHandler(foreign)

    def test_toolkit_instances_share_handlers(self, tmp_path):
        """Test that many toolkit instances keep one pair of handlers open."""
        log_file = str(tmp_path / "toolkit.log")
        with patch.dict(os.environ, {"LOG_FILE": log_file}, clear=True):
            try:
                for _ in range(20):
                    TameLatticeToolkit()

                handlers = logging.getLogger("src").handlers
                assert len(handlers) == 2
                assert sum(isinstance(h, logging.FileHandler) for h in handlers) == 1
            finally:
                close_logger("src")
