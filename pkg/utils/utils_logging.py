"""Run logging: SQLite rows plus an optional stderr echo. Standard output stays free for reports."""
import json
import random
import sys
from typing import Any, List, Optional

from config.config import RUN_LOG_TABLE
from database.db_models import create_connection, ensure_run_log
from utils.utils import get_utc_datetime
from utils.utils_system_specs import get_system_specs
from utils.utils_uuid import generate_uuid


# --------------------------------------------------------------------------- #
# RUN LOG MODEL
# --------------------------------------------------------------------------- #
class RunLog:
    table = RUN_LOG_TABLE
    uuid_field = "run_log_uuid"

    @staticmethod
    def insert(db_path, session_uuid, command, message, level):
        ensure_run_log(db_path)
        conn = create_connection(db_path)
        now = get_utc_datetime()
        random_number = random.randint(1, 999999999)
        run_log_uuid = generate_uuid(f"{session_uuid}{command}{random_number}")
        try:
            conn.execute(
                f"INSERT INTO {RunLog.table} "
                "(run_log_uuid, session_uuid, command, message, level, created_datetime) "
                "VALUES (?, ?, ?, ?, ?, ?)",
                (run_log_uuid, session_uuid, command, message, level, now),
            )
            conn.commit()
            return run_log_uuid
        except Exception:
            conn.rollback()
            raise
        finally:
            conn.close()


# --------------------------------------------------------------------------- #
# APP LOGGER
# --------------------------------------------------------------------------- #
class AppLogger:
    """
    Level methods take (command, message). Rows go to the run log when a
    database path is set; console_output echoes them to stderr.
    """

    def __init__(self, session_uuid=None, log_db_path=None, console_output=False):
        self.session_uuid = session_uuid or generate_uuid("session")
        self.log_db_path = log_db_path
        self.console_output = console_output

    def _write_log(self, command, message, level):
        if self.console_output:
            print(f"[{level}] {command}: {message}", file=sys.stderr)
        if not self.log_db_path:
            return
        try:
            RunLog.insert(self.log_db_path, self.session_uuid, command, message, level)
        except Exception as e:
            print(f"ERROR: Failed to write log: {e}", file=sys.stderr)

    def debug(self, command, message):    self._write_log(command, message, 'DEBUG')
    def info(self, command, message):     self._write_log(command, message, 'INFO')
    def warning(self, command, message):  self._write_log(command, message, 'WARNING')
    def error(self, command, message):    self._write_log(command, message, 'ERROR')
    def critical(self, command, message): self._write_log(command, message, 'CRITICAL')

    def log_action(self, command, action, details=None, level='INFO'):
        msg = f"Action: {action}" + (f" | Details: {details}" if details else "")
        self._write_log(command, msg, level)

    def log_error_with_exception(self, command, message, exception):
        msg = f"{message} | Exception: {type(exception).__name__}: {str(exception)}"
        self._write_log(command, msg, 'ERROR')


# --------------------------------------------------------------------------- #
# HELPER FUNCTIONS
# --------------------------------------------------------------------------- #
def get_logger_from_config(config) -> AppLogger:
    return AppLogger(log_db_path=config.log_db, console_output=config.verbose)


def log_run_environment(logger: AppLogger, command: str) -> None:
    logger.debug(command, json.dumps(get_system_specs(), indent=4, default=str))


def log_suite_result(logger: AppLogger, suite_name: str, trials: int, failures: int, seconds: float) -> None:
    msg = f"Suite '{suite_name}': {trials} trials, {failures} failures, {seconds:.2f}s"
    if failures:
        logger.error('selftest', msg)
    else:
        logger.info('selftest', msg)


def get_recent_logs(db_path: str, limit: int = 100, session_uuid: Optional[str] = None,
                    command: Optional[str] = None, level: Optional[str] = None) -> List[Any]:
    ensure_run_log(db_path)
    conn = create_connection(db_path)
    query = f"SELECT * FROM {RUN_LOG_TABLE} WHERE 1=1"
    params: List[Any] = []
    if session_uuid: query += " AND session_uuid = ?"; params.append(session_uuid)
    if command: query += " AND command = ?"; params.append(command)
    if level: query += " AND level = ?"; params.append(level)
    query += " ORDER BY created_datetime DESC LIMIT ?"
    params.append(limit)
    try:
        return conn.execute(query, params).fetchall()
    finally:
        conn.close()
