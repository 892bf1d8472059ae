"""Finite p-groups given by multiplication tables."""
