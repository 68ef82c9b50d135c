#!/usr/bin/env python3
"""
Launcher for running the project directory itself (python <project dir> ...).
Puts the project root on sys.path, then hands over to the CLI.
"""
import sys
from pathlib import Path

# -------------------------------------------------
# 1. Project root (works frozen or not)
# -------------------------------------------------
ROOT = Path(sys.executable).parent if getattr(sys, "frozen", False) else Path(__file__).resolve().parent
sys.path.insert(0, str(ROOT))

# -------------------------------------------------
# 2. Run the CLI
# -------------------------------------------------
from app.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
