"""Operator residuation verifier for finite bounded posets."""
