"""One-variable Nevanlinna functions for rational curves.

Counting functions are evaluated in closed form from located roots; circle
averages use the periodic trapezoid rule with point doubling.  All integrals
start at the unit circle, so roots with ``|z| <= 1`` (including 0) contribute
``mult * log r``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .numeric import descending_coeffs, eval_univariate
from .poly import Poly, diff, exact_div, gcd_many, squarefree_decompose

GUARD = 1e-9


class GuardGapError(ValueError):
    """A radius falls within the guard gap of a root modulus."""


class QuadratureError(RuntimeError):
    pass


@dataclass(frozen=True)
class Root:
    value: complex
    multiplicity: int
    radius: float


@dataclass
class Divisor:
    exact_factors: list[tuple[Poly, int]]
    roots: list[Root]

    def degree(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    def radii(self) -> list[float]:
        return [r.radius for r in self.roots]


@dataclass(frozen=True)
class RationalCurve:
    components: tuple[Poly, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("curve needs at least one component")
        if any(c.nvars != 1 for c in self.components):
            raise ValueError("curve components must be univariate")

    @property
    def n(self) -> int:
        return len(self.components) - 1

    @property
    def degree(self) -> int:
        return max(c.degree() for c in self.components)

    def is_constant(self) -> bool:
        return self.degree <= 0

    def values(self, z: np.ndarray) -> np.ndarray:
        return np.stack([eval_univariate(c, z) for c in self.components])

    def log_norm(self, z: np.ndarray) -> np.ndarray:
        vals = self.values(z)
        return 0.5 * np.log(np.sum(np.abs(vals) ** 2, axis=0))


def reduce_representation(components: Sequence[Poly]) -> RationalCurve:
    """Divide out the common factor so the components are coprime."""
    if all(c.is_zero() for c in components):
        raise ValueError("all components are zero")
    g = gcd_many(components)
    if g.degree() == 0:
        return RationalCurve(tuple(components))
    return RationalCurve(tuple(exact_div(c, g) if not c.is_zero() else c for c in components))


# -- roots and divisors ---------------------------------------------------

def _polish(coeffs: np.ndarray, root: complex, iters: int = 50) -> complex:
    dcoeffs = np.polyder(coeffs)
    z = complex(root)
    for _ in range(iters):
        fz = np.polyval(coeffs, z)
        dz = np.polyval(dcoeffs, z)
        if dz == 0:
            break
        step = fz / dz
        z -= step
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            break
    return z


def factor_roots(factor: Poly) -> list[complex]:
    """Roots of a squarefree factor: companion eigenvalues polished by Newton."""
    coeffs = descending_coeffs(factor)
    if len(coeffs) <= 1:
        return []
    if factor.degree() == 1 and factor.coeff((0,)) == 0:
        return [0j]
    return [_polish(coeffs, r) for r in np.roots(coeffs)]


def zero_divisor(p: Poly) -> Divisor:
    if p.is_zero():
        raise ValueError("zero polynomial has no divisor")
    factors = squarefree_decompose(p)
    roots = []
    for f, mult in factors:
        for z in factor_roots(f):
            roots.append(Root(complex(z), mult, float(abs(z))))
    roots.sort(key=lambda r: (r.radius, r.value.real, r.value.imag))
    return Divisor(factors, roots)


def _guard(radii: Sequence[float], r: float) -> None:
    for rho in radii:
        if abs(rho - r) <= GUARD * r:
            raise GuardGapError(f"radius {r} is within the guard gap of a root of modulus {rho}")


def counting(D: Divisor, r: float, M: int | None = None) -> float:
    """Truncated counting function ``N^{[M]}(r)`` (``M=None`` means no truncation)."""
    if r <= 1:
        raise ValueError("counting functions need r > 1")
    _guard(D.radii(), r)
    total = 0.0
    logr = math.log(r)
    for root in D.roots:
        mult = root.multiplicity if M is None else min(M, root.multiplicity)
        if root.radius <= 1:
            total += mult * logr
        elif root.radius < r:
            total += mult * (logr - math.log(root.radius))
    return total


def counting_poly(p: Poly, r: float, M: int | None = None) -> float:
    return counting(zero_divisor(p), r, M)


# -- circle averages ------------------------------------------------------

def circle_mean(func: Callable[[np.ndarray], np.ndarray], r: float, n0: int = 64,
                max_points: int = 2 ** 22, rtol: float = 1e-9) -> float:
    """``(1/2pi) int_0^{2pi} func(r e^{i theta}) d theta`` by doubled trapezoid."""
    n = n0
    theta = 2 * np.pi * np.arange(n) / n
    acc = float(np.sum(func(r * np.exp(1j * theta))))
    est = acc / n
    while n < max_points:
        theta = 2 * np.pi * (np.arange(n) + 0.5) / n
        acc += float(np.sum(func(r * np.exp(1j * theta))))
        n *= 2
        new = acc / n
        if abs(new - est) < rtol * max(1.0, abs(new)):
            return new
        est = new
    raise QuadratureError(f"trapezoid rule did not converge at r={r} with {max_points} points")


def log_norm_mean(f: RationalCurve, r: float, **kw) -> float:
    return circle_mean(f.log_norm, r, **kw)


def characteristic(f: RationalCurve, r: float, quad_points: int = 64) -> float:
    """``T_f(r)``: mean of ``log ||f||`` on ``|z| = r`` minus that on ``|z| = 1``."""
    if r <= 1:
        raise ValueError("characteristic needs r > 1")
    if f.is_constant():
        return 0.0
    return log_norm_mean(f, r, n0=quad_points) - log_norm_mean(f, 1.0, n0=quad_points)


def mean_log_abs(p: Poly, r: float) -> float:
    """Quadrature of ``log |p|`` on ``|z| = r``; rejects roots on the circle."""
    D = zero_divisor(p)
    _guard(D.radii(), r)
    return circle_mean(lambda z: np.log(np.abs(eval_univariate(p, z))), r)


def mean_log_abs_closed(p: Poly, r: float, D: Divisor | None = None) -> float:
    """Jensen's closed form ``log|lc| + sum mult * log max(r, |z_j|)``."""
    D = D or zero_divisor(p)
    return math.log(abs(float(p.lead_coeff()))) + sum(
        root.multiplicity * math.log(max(r, root.radius)) for root in D.roots
    )


def proximity(num: Poly, den: Poly, r: float) -> float:
    """``m(r, num/den)``: circle mean of ``log+ |num/den|``."""
    if den.is_zero():
        raise ValueError("denominator is zero")
    if r <= 1:
        raise ValueError("proximity needs r > 1")
    _guard(zero_divisor(den).radii(), r)

    def integrand(z):
        val = np.abs(eval_univariate(num, z)) / np.abs(eval_univariate(den, z))
        return np.log(np.maximum(val, 1.0))

    return circle_mean(integrand, r)


def jensen_check(p: Poly, r_grid: Sequence[float]) -> float:
    """Largest ``|N_p(r) - (mean log|p| on S(r) - mean log|p| on S(1))|`` over the grid."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    D = zero_divisor(p)
    try:
        base = mean_log_abs(p, 1.0)
    except GuardGapError:
        # a root on the unit circle makes the quadrature singular there
        base = mean_log_abs_closed(p, 1.0, D)
    worst = 0.0
    for r in r_grid:
        resid = counting(D, r) - (mean_log_abs(p, r) - base)
        worst = max(worst, abs(resid))
    return worst


def logderiv_trend(p: Poly, alpha: Sequence[int], r_grid: Sequence[float]) -> list[float]:
    """Series ``m(r, D^alpha p / p) / T(r, p)`` with ``T`` the characteristic of ``(1 : p)``."""
    if p.degree() <= 0:
        raise ValueError("logderiv_trend needs a nonconstant polynomial")
    dp = diff(p, alpha)
    curve = reduce_representation((Poly.const(1, 1), p))
    out = []
    for r in r_grid:
        m = proximity(dp, p, r) if not dp.is_zero() else 0.0
        out.append(m / characteristic(curve, r))
    return out


# -- grids and tables -----------------------------------------------------

def log_grid(r_min: float, r_max: float, points: int) -> list[float]:
    return [float(x) for x in np.geomspace(r_min, r_max, points)]


def linear_grid(r_min: float, r_max: float, points: int) -> list[float]:
    return [float(x) for x in np.linspace(r_min, r_max, points)]


def doubling_grid(r0: float, r_max: float) -> list[float]:
    out = []
    r = r0
    while r <= r_max * (1 + 1e-12):
        out.append(r)
        r *= 2
    return out


def make_grid(r_min: float, r_max: float, points: int, spacing: str = "log") -> list[float]:
    if r_min <= 1:
        raise ValueError("r_min must exceed 1")
    if spacing == "log":
        return log_grid(r_min, r_max, points)
    if spacing == "linear":
        return linear_grid(r_min, r_max, points)
    raise ValueError(f"unknown spacing {spacing!r}")


@dataclass
class GrowthTable:
    r_grid: list[float]
    values: dict[str, list[float]] = field(default_factory=dict)

    def add(self, name: str, series: Sequence[float]) -> None:
        if len(series) != len(self.r_grid):
            raise ValueError(f"series {name} has wrong length")
        if not all(math.isfinite(x) for x in series):
            raise ValueError(f"series {name} has non-finite values")
        self.values[name] = [float(x) for x in series]

    def to_csv(self, path: str | Path | None = None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        names = list(self.values)
        writer.writerow(["r"] + names)
        for i, r in enumerate(self.r_grid):
            writer.writerow([f"{r:.12g}"] + [f"{self.values[n][i]:.12g}" for n in names])
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text
