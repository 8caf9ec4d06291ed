"""Adjoint and relative adjoint algebras of Rep(H) computed in exact arithmetic."""

__version__ = "0.1.0"
