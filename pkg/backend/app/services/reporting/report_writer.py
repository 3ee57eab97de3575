"""
Report Writer Service
Versioned JSON documents with fixed field order and 17-significant-digit
floats, plus flat CSV tables through pandas
"""

import json
import logging
import math
import sys
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd
from pydantic import BaseModel

logger = logging.getLogger("ces-kit-report")


def to_plain(value: Any) -> Any:
    """Convert pydantic models, numpy values and enums into JSON-ready Python"""
    if isinstance(value, BaseModel):
        return to_plain(value.model_dump(mode="python"))
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_plain(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    return value


def _encode_float(x: float, digits: int) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    text = format(x, f".{digits}g")
    return text


def _encode(value: Any, digits: int, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_encode(v, digits, indent, level + 1)}" for k, v in value.items()]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, list):
        if not value:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in value):
            return "[" + ", ".join(_encode(v, digits, indent, level + 1) for v in value) + "]"
        items = [pad + _encode(v, digits, indent, level + 1) for v in value]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, float):
        return _encode_float(value, digits)
    if isinstance(value, int):
        return str(value)
    return json.dumps(value)


def dumps_report(document: Any, digits: int = 17, indent: int = 2) -> str:
    """Byte-stable JSON text for a report document"""
    return _encode(to_plain(document), digits, indent, 0) + "\n"


def build_report(schema: str, command: str, config: Dict[str, Any], results: List[Any],
                 elapsed: Optional[float] = None) -> Dict[str, Any]:
    """{schema, config, results, timing}; timing stays null unless requested"""
    return {
        "schema": schema,
        "command": command,
        "config": config,
        "results": results,
        "timing": None if elapsed is None else {"elapsed_seconds": elapsed},
    }


def to_csv(rows: List[Dict[str, Any]], digits: int = 17) -> str:
    """Flat table as CSV text"""
    frame = pd.DataFrame([to_plain(row) for row in rows])
    return frame.to_csv(index=False, float_format=f"%.{digits}g", lineterminator="\n")


def write_output(text: str, out: Optional[str] = None) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"Report written to {path}")
    else:
        sys.stdout.write(text)
