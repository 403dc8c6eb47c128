"""VAST Client test suite."""
