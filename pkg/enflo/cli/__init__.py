"""CLI module for enflo."""
