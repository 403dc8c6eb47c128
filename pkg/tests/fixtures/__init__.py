"""Fixtures package for test data."""
