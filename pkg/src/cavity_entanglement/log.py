"""Logging setup for the command-line front end."""

import logging
import sys

import colorama

_LEVEL_COLORS = {
    logging.DEBUG: colorama.Fore.CYAN,
    logging.INFO: colorama.Fore.GREEN,
    logging.WARNING: colorama.Fore.YELLOW,
    logging.ERROR: colorama.Fore.RED,
    logging.CRITICAL: colorama.Fore.RED + colorama.Style.BRIGHT,
}


class ColorFormatter(logging.Formatter):
    """Prefix records with a coloured level name."""

    def __init__(self, color: bool = True):
        super().__init__("%(levelname)s %(name)s: %(message)s")
        self.color = color

    def format(self, record: logging.LogRecord) -> str:
        text = super().format(record)
        if not self.color:
            return text
        prefix = _LEVEL_COLORS.get(record.levelno, "")
        return f"{prefix}{text}{colorama.Style.RESET_ALL}"


def configure_logging(verbosity: int = 0, color: bool = True) -> logging.Logger:
    """Install a single stderr handler on the package logger.

    verbosity 0 shows warnings, 1 info, 2 or more debug.
    """
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logger = logging.getLogger("cavity_entanglement")
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(ColorFormatter(color=color))
    logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = False
    return logger
