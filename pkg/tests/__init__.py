"""Tests for grmcweather."""
