from __future__ import annotations

import logging


def configure_logging(level: str) -> None:
    logging.basicConfig(level=getattr(logging, level.upper()))
    logging.getLogger("mcp").setLevel(logging.WARNING)
    logging.getLogger("asyncio").setLevel(logging.WARNING)
