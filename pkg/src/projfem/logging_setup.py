"""Route the projfem logger through rich."""

import logging

from rich.console import Console
from rich.logging import RichHandler

_HANDLER_NAME = "projfem-rich"


def configure_logging(level: str = "info", console: Console | None = None) -> logging.Logger:
    """
    Install a RichHandler on the ``projfem`` logger.

    Calling it again replaces the handler, so the level can be changed
    between CLI invocations in one process.

    Args:
        level: One of error, warning, info, debug (case-insensitive).
        console: Console to log to; stderr by default.

    Returns:
        The configured ``projfem`` logger.
    """
    logger = logging.getLogger("projfem")
    numeric = logging.getLevelName(level.upper())
    if not isinstance(numeric, int):
        numeric = logging.INFO
    for handler in list(logger.handlers):
        if handler.get_name() == _HANDLER_NAME:
            logger.removeHandler(handler)
    handler = RichHandler(
        console=console or Console(stderr=True),
        show_path=False,
        rich_tracebacks=False,
    )
    handler.set_name(_HANDLER_NAME)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    logger.addHandler(handler)
    logger.setLevel(numeric)
    logger.propagate = False
    return logger
