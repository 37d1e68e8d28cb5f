"""Tests for mm_sexpansion package."""
