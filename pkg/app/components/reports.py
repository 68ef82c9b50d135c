"""Report envelope shared by every command, plus text table helpers."""
from dataclasses import dataclass
from typing import Any, Dict, Sequence

import pandas as pd

from config.config import EXIT_CODES, SCHEMA_VERSION
from config.session import SessionConfig
from utils.utils import canonical_json
from utils.utils_uuid import derive_uuid


@dataclass
class CommandOutcome:
    """What a component hands back to the CLI: JSON payload, text rendering, exit code."""

    payload: Dict[str, Any]
    text: str
    exit_code: int = EXIT_CODES["OK"]

    def render(self, output: str) -> str:
        return canonical_json(self.payload) if output == "json" else self.text


def run_id(command: str, inputs: Dict[str, Any], config: SessionConfig) -> str:
    """Same command, inputs and parameters give the same id."""
    return derive_uuid(canonical_json({"command": command, "inputs": inputs, "parameters": config.fingerprint()}))


def build_report(command: str, inputs: Dict[str, Any], config: SessionConfig, result: Dict[str, Any]) -> Dict[str, Any]:
    return {
        "schema": SCHEMA_VERSION,
        "command": command,
        "run_id": run_id(command, inputs, config),
        "parameters": config.fingerprint(),
        "inputs": inputs,
        "result": result,
    }


def frame_table(rows: Sequence[Dict[str, Any]], columns: Sequence[str]) -> str:
    if not rows:
        return "(none)"
    df = pd.DataFrame(list(rows), columns=list(columns))
    return df.to_string(index=False)


def section(title: str, body: str) -> str:
    return f"{title}\n{'-' * len(title)}\n{body}"
