"""Exact engine for generalized cluster algebras from quivers with loop data."""

__version__ = "0.1.0"
