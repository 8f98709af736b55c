"""Pydantic models for reports and run configuration."""
