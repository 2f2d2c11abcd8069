"""Tests for schemanet."""
