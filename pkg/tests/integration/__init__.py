"""Acceptance tests for ergolab."""
