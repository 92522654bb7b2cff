"""Tests for geomkit-lib."""
