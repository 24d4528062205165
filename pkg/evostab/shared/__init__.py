"""Helpers shared between the evostab applications."""
