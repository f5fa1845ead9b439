"""Logging setup: rich handler on stderr."""

import logging
from typing import Optional, Union

from rich.console import Console
from rich.logging import RichHandler

_HANDLER_NAME = "arctest-rich"


def configure_logging(level: Union[int, str] = "WARNING", console: Optional[Console] = None) -> logging.Logger:
    """Attach a single RichHandler to the ``arctest`` logger.

    Calling it again replaces the handler, so tests can reconfigure freely.

    Args:
        level: Logging level name or number
        console: Console to write to; defaults to stderr

    Returns:
        The package logger
    """
    logger = logging.getLogger("arctest")
    for handler in list(logger.handlers):
        if handler.get_name() == _HANDLER_NAME:
            logger.removeHandler(handler)

    handler = RichHandler(
        console=console or Console(stderr=True),
        show_path=False,
        rich_tracebacks=True,
        markup=False,
    )
    handler.set_name(_HANDLER_NAME)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(level.upper() if isinstance(level, str) else level)
    logger.propagate = False
    return logger


def verbosity_to_level(base: str, verbose: int) -> str:
    """Map repeated -v flags onto a level, never going quieter than ``base``."""
    if verbose >= 2:
        return "DEBUG"
    if verbose == 1 and base.upper() not in ("DEBUG",):
        return "INFO"
    return base.upper()
