"""Integration tests for bpskit.

Full-length sampler runs and drift sweeps compared against known values.
"""
