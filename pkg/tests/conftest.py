from __future__ import annotations

from fractions import Fraction

import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hypersmt.poly import Poly, monomials_of_degree, parse

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

X = ["x0", "x1", "x2", "x3"]
Z = ["z"]


def to_sympy(p: Poly, names: list[str] | None = None):
    syms = sympy.symbols(names or [f"x{i}" for i in range(p.nvars)])
    if p.nvars == 1 and not names:
        syms = (sympy.Symbol("z"),)
    syms = syms if isinstance(syms, (list, tuple)) else (syms,)
    expr = sympy.Integer(0)
    for exps, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, exps):
            term *= s ** e
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, names: list[str]) -> Poly:
    syms = sympy.symbols(names)
    syms = syms if isinstance(syms, (list, tuple)) else (syms,)
    poly = sympy.Poly(sympy.expand(expr), *syms)
    return Poly({m: Fraction(int(c.p), int(c.q)) for m, c in poly.terms()}, len(names))


def param_rank(n: int, d: int, curve_degree: int | None = None) -> int:
    """Rank of the degree-d monomials of P^n pulled back along a parametrization.

    ``curve_degree=c`` uses the rational normal curve ``(s^c, s^(c-1) t, ..., t^c)``
    (so ``n == c``); ``None`` uses the identity, i.e. all of P^n.
    """
    if curve_degree is None:
        syms = sympy.symbols(f"y0:{n + 1}")
        coords, gens = list(syms), syms
    else:
        s, t = sympy.symbols("s t")
        coords, gens = [s ** (curve_degree - i) * t ** i for i in range(curve_degree + 1)], (s, t)
    rows = []
    for m in monomials_of_degree(n + 1, d):
        rows.append(sympy.Poly(sympy.prod(c ** e for c, e in zip(coords, m)), *gens).as_dict())
    support = sorted({k for r in rows for k in r})
    return sympy.Matrix([[r.get(k, 0) for k in support] for r in rows]).rank()


# acceptance lines collected for the terminal summary
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])


def zpoly(text: str) -> Poly:
    return parse(text, Z)


rationals = st.fractions(min_value=-9, max_value=9, max_denominator=5)


@st.composite
def polys(draw, nvars: int = 2, max_deg: int = 3, max_terms: int = 5):
    n_terms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n_terms):
        exps = tuple(draw(st.lists(st.integers(0, max_deg), min_size=nvars, max_size=nvars)))
        terms[exps] = draw(rationals)
    return Poly(terms, nvars)


@st.composite
def upolys(draw, max_deg: int = 5, nonzero: bool = False):
    coeffs = draw(st.lists(st.integers(-6, 6), min_size=1, max_size=max_deg + 1))
    if nonzero and not any(coeffs):
        coeffs[-1] = 1
    return Poly.from_coeffs(coeffs)
