"""
Logging setup for ces-kit
Plain text by default, JSON lines via python-json-logger on request
"""

import logging
import sys
from typing import Optional

from pythonjsonlogger import jsonlogger

from .config import LoggingSettings


def setup_logging(settings: Optional[LoggingSettings] = None, level: Optional[str] = None,
                  json_output: Optional[bool] = None) -> None:
    """Configure the root handler; stderr keeps stdout free for reports"""
    settings = settings or LoggingSettings()
    level_name = (level or settings.level).upper()
    use_json = settings.json_output if json_output is None else json_output

    handler = logging.StreamHandler(sys.stderr)
    if use_json:
        handler.setFormatter(jsonlogger.JsonFormatter("%(asctime)s %(name)s %(levelname)s %(message)s"))
    else:
        handler.setFormatter(logging.Formatter(settings.format))

    root = logging.getLogger()
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(getattr(logging, level_name, logging.INFO))
