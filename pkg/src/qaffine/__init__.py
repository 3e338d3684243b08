"""Exact q-character computations for quantum affine algebras."""

__version__ = "0.1.0"
