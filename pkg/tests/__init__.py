"""Tests for spectral_lab package."""
