"""Configuration for the evostab evolutionary stability toolkit."""
