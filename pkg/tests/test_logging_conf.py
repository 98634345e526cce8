"""Tests for lpa_chen.logging_conf."""

import logging

from lpa_chen.logging_conf import configure_logging


def test_configure_logging_sets_root_level():
    # Clear existing handlers so basicConfig takes effect
    logging.root.handlers.clear()
    configure_logging("DEBUG")
    assert logging.root.level == logging.DEBUG


def test_configure_logging_accepts_lowercase():
    logging.root.handlers.clear()
    configure_logging("warning")
    assert logging.root.level == logging.WARNING


def test_configure_logging_suppresses_noisy_loggers():
    logging.root.handlers.clear()
    configure_logging("DEBUG")
    assert logging.getLogger("mcp").level == logging.WARNING
    assert logging.getLogger("asyncio").level == logging.WARNING
