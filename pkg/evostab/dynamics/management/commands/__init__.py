"""Management commands of the dynamics application."""
