"""Structural predicates on posets with a unary operation."""
