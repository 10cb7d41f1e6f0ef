"""Exact combinatorics of canonical bases, cells, tilting Homs and tensor-ideal lattices."""

__version__ = "0.1.0"
