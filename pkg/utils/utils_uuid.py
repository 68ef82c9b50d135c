# utils/utils_uuid.py
import uuid
import datetime

from config.config import PROJECT_NAME

# Namespace for everything this tool derives; uuid5 over it is stable across runs
PROJECT_NAMESPACE = uuid.uuid5(uuid.NAMESPACE_DNS, PROJECT_NAME)


def generate_uuid(input_string=None, namespace=PROJECT_NAMESPACE):
    """
    UUID from the current timestamp and an optional string. Differs on every call;
    used for log rows and session ids, never inside reports.
    """
    if input_string is not None and not isinstance(input_string, str):
        raise ValueError("Input string must be a string or None")
    timestamp = datetime.datetime.now().isoformat()
    return str(uuid.uuid5(namespace, timestamp + (input_string or "")))


def derive_uuid(input_string, namespace=PROJECT_NAMESPACE):
    """
    Deterministic uuid5 of a single string.

    Raises:
        ValueError: If input_string is not a non-empty string.
    """
    if not isinstance(input_string, str):
        raise ValueError("Input must be a string")
    if not input_string:
        raise ValueError("Input string cannot be empty")
    return str(uuid.uuid5(namespace, input_string))
