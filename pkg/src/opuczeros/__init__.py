"""Zeros of orthogonal polynomials on the unit circle.

Szego recursion, CMV truncations, paraorthogonal phase functions, Szego
asymptotics, weight-to-coefficient recovery, OPRL comparisons, and the
statistics (clock vs Poisson) of the resulting zero sets.
"""

__version__ = "0.1.0"
