from __future__ import annotations

import itertools
import math

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from hypersmt import linalg
from hypersmt.ideal import Variety
from hypersmt.position import (
    Family,
    PositionError,
    check_subgeneral,
    complete_basis,
    completion_rank_ok,
    curve_points,
    full_rank_subsets,
    generic_subspace,
    position_constants,
    rank_classes,
    rank_preserved,
)
from hypersmt.poly import parse

from conftest import zpoly

X2, X3 = ["x0", "x1"], ["x0", "x1", "x2"]
CONIC = Variety(2, [parse("x0*x2 - x1^2", X3)], 1)
# lines a*x0 + b*x1 + x2 meet the conic (1, z, z^2) where z^2 + b z + a = 0
CONIC_LINES = ["6*x0 - 5*x1 + x2", "-8*x0 + 2*x1 + x2", "-15*x0 + 2*x1 + x2",
               "-20*x0 - x1 + x2", "-35*x0 - 2*x1 + x2", "-30*x0 + x1 + x2", "5*x0 - 2*x1 + x2"]


def family(texts, names, N, V):
    return Family.from_polys([parse(t, names) for t in texts], N, V)


def test_p1_points_subgeneral():
    F = family(["x0", "x1", "x0 - x1"], X2, 1, Variety.projective_space(1))
    cert = check_subgeneral(F)
    assert cert.is_subgeneral and cert.failing_subset is None
    assert set(cert.verdicts.values()) == {"empty"}


def test_repeated_line_fails():
    F = family(["x0", "x1", "x0"], X2, 1, Variety.projective_space(1))
    cert = check_subgeneral(F)
    assert not cert.is_subgeneral and cert.failing_subset == (0, 2)


def conic_roots(text):
    p = parse(text, X3)
    z = sympy.Symbol("z")
    return set(sympy.roots(p.coeff((1, 0, 0)) + p.coeff((0, 1, 0)) * z + p.coeff((0, 0, 1)) * z ** 2, z))


def test_conic_lines_oracle():
    F = family(CONIC_LINES, X3, 2, CONIC)
    cert = check_subgeneral(F)
    roots = [conic_roots(t) for t in CONIC_LINES]
    for R, verdict in cert.verdicts.items():
        common = set.intersection(*(roots[i] for i in R))
        assert verdict == ("nonempty" if common else "empty")
    assert cert.is_subgeneral
    bad = family(CONIC_LINES[:3] + ["-12*x0 + x1 + x2"], X3, 2, CONIC)  # roots 3, -4 (shares 3 with rows 0 and 2)
    cert = check_subgeneral(bad)
    assert not cert.is_subgeneral and cert.failing_subset == (0, 2, 3)
    assert all(parse(t, X3).evaluate(cert.witnesses[(0, 2, 3)]) == 0 for t in CONIC_LINES[:1])


def test_rank_classes_examples():
    F = family(["x0", "x1", "x2", "x0 + x1 + x2", "2*x0"], X3, 2, Variety.projective_space(2))
    assert rank_classes((1,), F) == 1
    for R in itertools.combinations(range(4), 3):
        assert rank_classes(R, F) == sympy.Matrix([F.lifted[i].coords for i in R]).rank() == 3
    assert rank_classes((0, 4), F) == 1
    with pytest.raises(ValueError):
        rank_classes((), F)


def test_subgeneral_implies_rank_chain():
    F = family(CONIC_LINES, X3, 2, CONIC)
    for R in itertools.combinations(range(F.q), 3):
        assert rank_classes(R, F) >= 2


def test_generic_subspace_examples():
    L = generic_subspace([[1, 0], [0, 1], [1, 1]], 2)
    assert L.dim == 2 and linalg.rank(L.basis) == 2
    L = generic_subspace([[1, 2, 3]], 2, seed=5)
    assert any(x != 0 for x in L.restrict([1, 2, 3]))
    assert generic_subspace([[1, 2, 3]], 2, seed=5).basis == L.basis


def test_generic_subspace_on_family():
    F = family(CONIC_LINES, X3, 2, CONIC)
    L = generic_subspace(F, seed=3)
    assert L.dim == 2
    vecs = F.vectors()
    restricted = [L.restrict(v) for v in vecs]
    for S in itertools.chain.from_iterable(itertools.combinations(range(F.q), s) for s in (1, 2)):
        assert sympy.Matrix([restricted[i] for i in S]).rank() == sympy.Matrix([vecs[i] for i in S]).rank()


@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=5),
       st.integers(0, 100))
def test_generic_subspace_preserves_ranks(vectors, seed):
    vectors = [v for v in vectors if any(v)]
    if not vectors:
        return
    L = generic_subspace(vectors, 3, seed=seed)
    assert rank_preserved(vectors, L, 3)


def test_complete_basis_examples():
    P1 = Variety.projective_space(1)
    F = family(["x0", "x1", "x0 + x1"], X2, 1, P1)
    assert complete_basis(F) == []
    F = family(CONIC_LINES, X3, 2, CONIC)
    T = complete_basis(F, [(0, 1)], seed=1)
    assert len(T) == 1
    from hypersmt.ideal import quot_class
    rows = [F.lifted[0].coords, F.lifted[1].coords, quot_class(T[0], CONIC).coords]
    assert sympy.Matrix(rows).rank() == 3


def test_complete_basis_all_r0_and_rejection():
    F = family(CONIC_LINES, X3, 2, CONIC)
    r0s = full_rank_subsets(F)
    T = complete_basis(F, seed=2)
    from hypersmt.ideal import quot_class
    tc = [quot_class(t, CONIC).coords for t in T]
    assert completion_rank_ok(F, tc, r0s)
    # a T inside the span of R0 is rejected
    inside = [a + b for a, b in zip(F.lifted[0].coords, F.lifted[1].coords)]
    assert not completion_rank_ok(F, [inside], [(0, 1)])
    with pytest.raises(PositionError):
        complete_basis(family(["x0", "2*x0", "x1"], X3, 2, CONIC), [(0, 1)])


def test_position_constants_coordinate_lines():
    P2 = Variety.projective_space(2)
    F = family(["x0", "x1", "x2"], X3, 2, P2)
    rng = np.random.default_rng(0)
    pts = rng.normal(size=(20000, 3)) + 1j * rng.normal(size=(20000, 3))
    pts = np.vstack([pts, [[1, 1, 1], [1, 0, 0]]])
    a, b = position_constants((0, 1, 2), F, pts)
    assert a == pytest.approx(1 / math.sqrt(3), rel=1e-9)
    assert b == pytest.approx(1.0, rel=1e-9)


def test_position_constants_single_point_and_monotone():
    P0 = Variety.projective_space(0)
    F = Family.from_polys([parse("3*x0", ["x0"])], 0, P0)
    a, b = position_constants((0,), F, np.array([[2.0 + 0j]]))
    assert a == b == pytest.approx(3.0)
    F = family(CONIC_LINES, X3, 2, CONIC)
    comps = [zpoly("1"), zpoly("z"), zpoly("z^2")]
    pts = curve_points(comps, 400, seed=4)
    a1, b1 = position_constants((0, 1, 2), F, pts[:200])
    a2, b2 = position_constants((0, 1, 2), F, pts)
    assert 0 < a2 <= a1 <= b1 <= b2
    with pytest.raises(PositionError):
        position_constants((0, 1, 2), F, None)


def test_position_constants_rejects_meeting_subset():
    F = family(["x0", "x1", "x0 + x1"], X3, 1, Variety.projective_space(2))
    with pytest.raises(PositionError):
        position_constants((0, 1), F, np.ones((3, 3), dtype=complex))
