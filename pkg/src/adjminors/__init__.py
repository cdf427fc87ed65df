"""Ideals of adjacent 2-minors: classification, minimal primes, table connectivity."""

__version__ = "0.1.0"
