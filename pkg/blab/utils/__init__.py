"""Shared utilities: configuration, arithmetic, exact linear algebra, reporting."""
