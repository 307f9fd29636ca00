"""Temporary scaffold init."""
