"""Root logger configuration for command-line entry points."""

import logging
from typing import Optional

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"


def configure_logging(level: Optional[str] = None, verbose: bool = False) -> None:
    """
    Configure the root logger once for a CLI run.

    Args:
        level: Level name such as "INFO" (defaults to WARNING)
        verbose: Force DEBUG regardless of ``level``
    """
    resolved = logging.DEBUG if verbose else getattr(logging, (level or "WARNING").upper(), None)
    if not isinstance(resolved, int):
        resolved = logging.WARNING
    logging.basicConfig(level=resolved, format=LOG_FORMAT, force=True)
