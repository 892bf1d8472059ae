"""Classification pipeline, certificate verification and census runs."""
