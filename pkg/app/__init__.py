"""Command-line application: argument parsing and per-command components."""
