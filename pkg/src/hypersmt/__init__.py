"""Exact checks of truncated second main theorems for rational curves.

Polynomials, Groebner bases and Nochka weights are exact over the rationals;
Nevanlinna functions of rational curves are evaluated in closed form or by
controlled quadrature.
"""

from .poly import Poly, parse

__all__ = ["Poly", "parse"]
__version__ = "0.1.0"
