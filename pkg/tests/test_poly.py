from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hypersmt.poly import (
    Poly,
    PolySyntaxError,
    arith,
    coprime_basis,
    det_poly_matrix,
    diff,
    divides,
    exact_div,
    gcd_univariate,
    multiplicity,
    parse,
    squarefree_decompose,
    substitute,
)

from conftest import X, from_sympy, polys, to_sympy, upolys, zpoly

X3 = X[:3]


def test_parse_conic_terms():
    p = parse("x0*x2 - x1^2", X3)
    assert p.terms == {(1, 0, 1): 1, (0, 2, 0): -1}


def test_parse_zero_is_empty():
    assert parse("0", ["x"]).terms == {}


def test_parse_binomial():
    assert parse("(x0+x1)^2", X[:2]).to_string(X[:2]) == "x0^2 + 2*x0*x1 + x1^2"


def test_parse_rationals_and_power_aliases():
    p = parse("3/2*x0**2 - 1/4*x1", X[:2])
    assert p.coeff((2, 0)) == Fraction(3, 2)
    assert p.coeff((0, 1)) == Fraction(-1, 4)


@pytest.mark.parametrize("text, kind", [
    ("x0 +* x1", "syntax"),
    ("x0 + y", "unknown"),
    ("x0^-1", "negative"),
    ("(x0 + 1", "syntax"),
])
def test_parse_errors(text, kind):
    with pytest.raises(PolySyntaxError) as info:
        parse(text, X[:2])
    assert info.value.position is not None


@given(polys(nvars=3))
def test_print_parse_roundtrip(p):
    assert parse(p.to_string(X3), X3) == p


def test_arith_examples():
    x = parse("x", ["x"])
    assert arith(x + 1, x - 1, "mul") == parse("x^2 - 1", ["x"])
    c = parse("x0*x2 - x1^2", X3)
    assert arith(c, Poly.zero(3), "add") == c
    assert arith(c, c, "sub").is_zero()
    with pytest.raises(ValueError):
        arith(c, x, "add")


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a


@given(polys(), polys())
def test_product_matches_sympy(a, b):
    assert from_sympy(to_sympy(a) * to_sympy(b), ["x0", "x1"]) == a * b


def test_substitute_examples():
    f = [zpoly("1"), zpoly("z"), zpoly("z^2")]
    assert substitute(parse("x0*x2 - x1^2", X3), f).is_zero()
    assert substitute(parse("x0 + x1", X[:2]), [zpoly("1"), zpoly("z")]) == zpoly("1 + z")
    g = [zpoly("1"), zpoly("z"), zpoly("z^3")]
    assert substitute(parse("x1^2 - x0*x2", X3), g) == zpoly("z^2 - z^3")
    with pytest.raises(ValueError):
        substitute(parse("x0", X3), f[:2])


@given(polys(nvars=3, max_deg=2), polys(nvars=3, max_deg=2), st.lists(upolys(3), min_size=3, max_size=3))
def test_substitute_is_a_homomorphism(q1, q2, f):
    assert substitute(q1 * q2, f) == substitute(q1, f) * substitute(q2, f)
    assert substitute(q1 + q2, f) == substitute(q1, f) + substitute(q2, f)


def test_diff_examples():
    assert diff(zpoly("z^3"), (2,)) == zpoly("6*z")
    assert diff(parse("x*y^2", ["x", "y"]), (1, 1)) == parse("2*y", ["x", "y"])
    p = parse("x^3*y + y^2", ["x", "y"])
    assert diff(p, (0, 0)) == p


@given(polys(max_deg=4), st.tuples(st.integers(0, 2), st.integers(0, 2)), st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_diff_composes(p, a, b):
    total = tuple(x + y for x, y in zip(a, b))
    assert diff(diff(p, a), b) == diff(p, total)
    sym = to_sympy(p)
    x0, x1 = sympy.symbols("x0 x1")
    assert from_sympy(sympy.diff(sym, x0, a[0], x1, a[1]) if any(a) else sym, ["x0", "x1"]) == diff(p, a)


def test_gcd_examples():
    assert gcd_univariate(zpoly("z^2 - 1"), zpoly("z - 1")) == zpoly("z - 1")
    assert gcd_univariate(zpoly("z^2 + 1"), zpoly("z + 2")) == zpoly("1")
    assert gcd_univariate(zpoly("3*z^2 - 3"), Poly.zero(1)) == zpoly("z^2 - 1")
    with pytest.raises(ValueError):
        gcd_univariate(Poly.zero(1), Poly.zero(1))


@given(upolys(nonzero=True), upolys(nonzero=True))
def test_gcd_matches_sympy(a, b):
    z = sympy.Symbol("z")
    expected = sympy.Poly(sympy.gcd(to_sympy(a), to_sympy(b)), z).monic()
    assert gcd_univariate(a, b) == from_sympy(expected.as_expr(), ["z"])


def test_squarefree_examples():
    assert squarefree_decompose(zpoly("z^3*(z - 1)")) == [(zpoly("z - 1"), 1), (zpoly("z"), 3)]
    assert squarefree_decompose(zpoly("z^2 - 1")) == [(zpoly("z^2 - 1"), 1)]
    assert squarefree_decompose(zpoly("(z^2 - 2)^2*(z + 1)")) == [(zpoly("z + 1"), 1), (zpoly("z^2 - 2"), 2)]
    with pytest.raises(ValueError):
        squarefree_decompose(Poly.zero(1))


@given(upolys(max_deg=6, nonzero=True))
def test_squarefree_reconstructs(p):
    parts = squarefree_decompose(p)
    prod = Poly.const(1, 1)
    for f, m in parts:
        prod = prod * f ** m
        assert gcd_univariate(f, f.__class__.from_coeffs([0]) + diff(f, (1,))).degree() == 0
    assert prod * p.lead_coeff() == p
    mults = [m for _, m in parts]
    assert mults == sorted(set(mults))
    z = sympy.Symbol("z")
    _, oracle = sympy.sqf_list(to_sympy(p), z)
    assert sorted(m for _, m in oracle) == mults


def test_det_examples():
    one, z = zpoly("1"), zpoly("z")
    zero = Poly.zero(1)
    assert det_poly_matrix([[one, z], [zero, one]]) == one
    M = [[one, z, zpoly("z^2")], [zero, one, zpoly("2*z")], [zero, zero, zpoly("2")]]
    assert det_poly_matrix(M) == zpoly("2")
    assert det_poly_matrix([[one, z], [one, z]]).is_zero()
    with pytest.raises(ValueError):
        det_poly_matrix([[one, z]])


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(upolys(2), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_det_matches_sympy(M):
    expected = sympy.Matrix([[to_sympy(p) for p in row] for row in M]).det()
    assert det_poly_matrix(M) == from_sympy(expected, ["z"])


@given(st.lists(upolys(4, nonzero=True), min_size=1, max_size=4))
def test_coprime_basis_refines_inputs(ps):
    basis = coprime_basis(ps)
    for i, a in enumerate(basis):
        for b in basis[i + 1:]:
            assert gcd_univariate(a, b).degree() == 0
    for p in ps:
        rebuilt = Poly.const(p.lead_coeff(), 1)
        for b in basis:
            if divides(b, p):
                rebuilt = rebuilt * b ** multiplicity(b, p)
        assert rebuilt == p


def test_multiplicity_and_exact_div():
    p = zpoly("z^3*(z - 2)^2")
    assert multiplicity(zpoly("z"), p) == 3
    assert multiplicity(zpoly("z - 2"), p) == 2
    assert exact_div(p, zpoly("z^3")) == zpoly("(z - 2)^2")
    with pytest.raises(ArithmeticError):
        exact_div(p, zpoly("z - 1"))
