"""Operator calculus on the harmonic oscillator and its zeta-function identities."""

__version__ = "0.1.0"
