"""
JSON sidecar written next to every data file. Timestamps live here only,
so data files stay byte-identical across runs.
"""
from datetime import datetime
from typing import Any, Dict, Optional

from dateutil import tz

TOOL_NAME = "cavity-transfer"
TOOL_VERSION = "1.0.0"
GRID_NOTE = (
    "time resolution is a chosen default (2001 points over [0, 2N/xi], "
    "golden-section refinement to 1e-4/xi) unless overridden"
)


def sidecar_path(output_path: str) -> str:
    return f"{output_path}.meta.json"


def utc_timestamp() -> str:
    return datetime.now(tz.tzutc()).isoformat()


def build_sidecar(
        command: str,
        wall_time: float,
        parameters: Dict[str, Any],
        grid: Optional[Dict[str, Any]] = None,
        extra: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    meta = {
        "tool": TOOL_NAME,
        "version": TOOL_VERSION,
        "command": command,
        "created_at": utc_timestamp(),
        "wall_time_seconds": wall_time,
        "parameters": parameters,
        "grid": grid or {},
        "note": GRID_NOTE
    }
    if extra:
        meta.update(extra)
    return meta
