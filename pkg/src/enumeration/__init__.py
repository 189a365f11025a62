"""Exhaustive generation of small bounded posets with a unary operation."""
