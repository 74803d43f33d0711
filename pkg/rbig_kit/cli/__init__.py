"""CLI module for rbig-kit."""

from rbig_kit.cli.main import cli

__all__ = ["cli"]
