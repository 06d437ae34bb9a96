"""GJPS Homology - Configuration and logging utilities."""
