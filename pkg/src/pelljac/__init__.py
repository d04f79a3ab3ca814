"""Certified solver for P_k = J_n + J_m and Q_k = J_n + J_m."""

__version__ = "0.1.0"
