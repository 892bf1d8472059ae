"""Certificates for the split/special dichotomy of p-torsion unipotent groups."""

__version__ = "0.1.0"
