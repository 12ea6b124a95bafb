"""Rendering for zero-set data produced by the opuczeros harness.

This package only reads the documented CSV/JSON formats; it never computes
zeros itself and does not depend on the library that does.
"""

__version__ = "0.1.0"
