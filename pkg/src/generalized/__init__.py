"""Subset-level residuation: conditions (11), (12), (15), (16) and their reduction."""
