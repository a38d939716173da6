"""Handlers for the run, validate and hist commands."""
