"""Exact computational geometry of ordinary circles.

Generates the extremal point configurations of the ordinary-circles problem,
counts circle/line incidence spectra with certified arithmetic, and verifies
the closed-form minima and maxima at desk scale.
"""

__version__ = "0.1.0"
