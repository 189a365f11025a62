"""Residuation operators M and R and the checks built on them."""
