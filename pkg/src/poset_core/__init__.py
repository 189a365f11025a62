"""Finite bounded posets with a unary operation and the L/U cone calculus."""
