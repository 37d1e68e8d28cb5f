"""Tests for mm-sexpansion."""
