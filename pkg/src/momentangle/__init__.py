"""Homology coalgebras and cohomology rings of polyhedral products Z_K(X,A)."""

__version__ = "0.1.0"
