"""First Galois cohomology of kernels of p-polynomials over k((t))."""
