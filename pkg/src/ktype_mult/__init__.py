"""Exact K-type multiplicities for standard modules of GL_n(R)."""

__version__ = "0.1.0"
