"""One module per command, plus the type text format and the report envelope."""
