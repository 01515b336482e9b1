"""Logging set-up for command-line runs."""

import logging
from pathlib import Path

LOG_FORMAT = "%(asctime)s | %(levelname)s | %(name)s | %(message)s"


def setup_logging(level="INFO", log_file=None):
    """
    Configure the root logger once per run.

    Args:
        level (str): logging level name for the console
        log_file (str, optional): also write records to this file (DEBUG)

    Returns:
        logging.Logger: the package logger
    """
    root = logging.getLogger()
    for handler in [h for h in root.handlers if getattr(h, "_sevrp", False)]:
        root.removeHandler(handler)
        handler.close()
    console_level = getattr(logging, str(level).upper(), logging.INFO)
    root.setLevel(logging.DEBUG if log_file else console_level)

    formatter = logging.Formatter(LOG_FORMAT)
    console = logging.StreamHandler()
    console.setLevel(console_level)
    console.setFormatter(formatter)
    console._sevrp = True
    root.addHandler(console)

    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        file_handler._sevrp = True
        root.addHandler(file_handler)

    return logging.getLogger("src")
