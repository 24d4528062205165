"""Define management commands for the evostab command-line toolkit."""
