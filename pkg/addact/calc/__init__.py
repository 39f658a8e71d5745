"""Exact polynomial, linear algebra and local algebra engine."""
