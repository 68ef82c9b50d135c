# utils/utils.py
import datetime
import json
from datetime import timezone
from typing import Any


def get_utc_datetime():
    """
    Get the current UTC datetime as an ISO 8601 string with microsecond precision.
    """
    return datetime.datetime.now(timezone.utc).isoformat()


def canonical_json(payload: Any) -> str:
    """Sorted keys, two-space indent, no trailing whitespace: identical payloads give identical bytes."""
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False)
