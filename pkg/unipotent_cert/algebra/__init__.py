"""p-polynomials over k, changes of variables and anisotropy decisions."""
