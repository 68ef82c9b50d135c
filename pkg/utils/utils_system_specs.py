import os
import platform
import socket
import sys
from typing import Any, Dict

import psutil

from utils.utils_uuid import derive_uuid


# ─────────────────────────────────────────────────────────────────────────────
# Worker sizing
# ─────────────────────────────────────────────────────────────────────────────
def resolve_worker_count(requested: int) -> int:
    """0 means one worker per physical core (logical count, then 1, as fallbacks)."""
    if requested > 0:
        return requested
    cores = psutil.cpu_count(logical=False) or psutil.cpu_count(logical=True) or os.cpu_count()
    return max(1, cores or 1)


# ─────────────────────────────────────────────────────────────────────────────
# Environment snapshot
# ─────────────────────────────────────────────────────────────────────────────
def get_hostname():
    return socket.gethostname()


def get_system_specs() -> Dict[str, Any]:
    """
    Machine name, OS, Python and CPU/memory figures as a JSON-compatible dict.
    Written to the run log at DEBUG; never part of a report.
    """
    try:
        specs = {}
        hostname = get_hostname()
        specs["hostname"] = hostname
        specs["hostname_uuid"] = derive_uuid(hostname)

        specs["os"] = {
            "name": platform.system(),
            "version": platform.release(),
            "full_name": platform.platform(),
        }

        specs["python"] = {
            "version": platform.python_version(),
            "implementation": platform.python_implementation(),
            "executable": sys.executable,
        }

        specs["cpu"] = {
            "architecture": platform.machine(),
            "cores_physical": psutil.cpu_count(logical=False),
            "cores_logical": psutil.cpu_count(logical=True),
        }

        memory = psutil.virtual_memory()
        specs["memory"] = {
            "total_gb": round(memory.total / (1024 ** 3), 2),
            "available_gb": round(memory.available / (1024 ** 3), 2),
        }
        return specs
    except Exception as e:
        return {"error": f"Failed to retrieve system specs: {str(e)}"}
