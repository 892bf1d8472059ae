"""Exact arithmetic in the tower F_q, F_q[s], k = F_q(s), k((t))."""
