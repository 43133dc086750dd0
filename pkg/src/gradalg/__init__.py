"""Exact tools for gradings on real associative algebras."""
__version__ = "0.1.0"
