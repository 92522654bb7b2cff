"""The ``geomkit`` command-line interface."""

from geomkit_lib.cli.main import build_parser, main

__all__ = ["build_parser", "main"]
