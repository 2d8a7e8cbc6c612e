"""Floating-point evaluation of exact polynomials."""

from __future__ import annotations

import numpy as np

from .poly import Poly


def eval_points(p: Poly, points: np.ndarray) -> np.ndarray:
    """Evaluate ``p`` at each row of a ``(S, nvars)`` complex array."""
    points = np.asarray(points, dtype=complex)
    out = np.zeros(points.shape[0], dtype=complex)
    for exps, c in p.terms.items():
        term = np.full(points.shape[0], float(c), dtype=complex)
        for j, e in enumerate(exps):
            if e:
                term = term * points[:, j] ** e
        out += term
    return out


def descending_coeffs(p: Poly) -> np.ndarray:
    """Coefficients of a univariate polynomial, highest degree first."""
    return np.array([float(c) for c in reversed(p.coeffs())], dtype=float)


def eval_univariate(p: Poly, z: np.ndarray) -> np.ndarray:
    if p.is_zero():
        return np.zeros_like(np.asarray(z, dtype=complex))
    return np.polyval(descending_coeffs(p), np.asarray(z, dtype=complex))
