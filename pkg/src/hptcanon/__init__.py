"""Exact canonicalizer for single-qubit circuits over the H, P, T gates."""

__version__ = "0.1.0"
