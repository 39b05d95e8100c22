"""CLI commands module."""

from . import certify, config, space, verify

__all__ = ["space", "verify", "certify", "config"]
