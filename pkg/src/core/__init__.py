"""GJPS Homology - Exact algebra, complexes and homology engines."""
