"""Run-log database: dict-based table definition and SQLite connection helpers."""
import os
import sqlite3
from typing import Any, Dict, List

from config.config import RUN_LOG_TABLE


# --------------------------------------------------------------------------- #
# TABLE DEFINITIONS
# --------------------------------------------------------------------------- #
def _column(data_type: str, primary_key: bool = False, null_constraint: str = "NULL") -> Dict[str, Any]:
    return {
        "primary_key": primary_key,
        "data_type": data_type,
        "null_constraint": null_constraint,
        "column_default": None,
        "is_unique": primary_key,
    }


TABLES: List[Dict[str, Any]] = [
    {
        "name": RUN_LOG_TABLE,
        "columns": {
            "run_log_uuid": _column("TEXT", primary_key=True, null_constraint="NOT NULL"),
            "session_uuid": _column("TEXT"),
            "command": _column("TEXT"),
            "message": _column("TEXT"),
            "level": _column("TEXT"),
            "created_datetime": _column("TEXT", null_constraint="NOT NULL"),
        },
    },
]


def generate_create_table_sql(table_def: Dict[str, Any]) -> str:
    """Generate CREATE TABLE SQL from structured table definition."""
    col_defs = []
    for col_name, col_config in table_def["columns"].items():
        parts = [col_name, col_config["data_type"]]
        if col_config["primary_key"]:
            parts.append("PRIMARY KEY")
        if col_config["null_constraint"] == "NOT NULL":
            parts.append("NOT NULL")
        if col_config["column_default"] is not None:
            parts.append(f"DEFAULT {col_config['column_default']!r}")
        if col_config["is_unique"] and not col_config["primary_key"]:
            parts.append("UNIQUE")
        col_defs.append(" ".join(parts))
    return f"CREATE TABLE IF NOT EXISTS {table_def['name']} ({', '.join(col_defs)});"


# --------------------------------------------------------------------------- #
# CONNECTION
# --------------------------------------------------------------------------- #
def create_connection(db_path: str) -> sqlite3.Connection:
    directory = os.path.dirname(os.path.abspath(db_path))
    os.makedirs(directory, exist_ok=True)
    return sqlite3.connect(db_path)


def ensure_run_log(db_path: str) -> None:
    """Create every table in TABLES if missing."""
    conn = create_connection(db_path)
    try:
        for table_def in TABLES:
            conn.execute(generate_create_table_sql(table_def))
        conn.commit()
    finally:
        conn.close()
