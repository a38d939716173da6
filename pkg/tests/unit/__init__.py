"""Unit tests for ergolab."""
