"""Generalized Wronskians over polynomial rings."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .poly import Exponents, Poly, det_poly_matrix, diff


class WronskianError(ValueError):
    pass


@dataclass(frozen=True)
class AdmissibleSet:
    alphas: tuple[Exponents, ...]
    cap: int

    def __len__(self) -> int:
        return len(self.alphas)


def multi_indices(m: int, cap: int) -> list[Exponents]:
    """Multi-indices with ``|alpha| <= cap``: by degree, then lex-descending."""
    out = []
    for deg in range(cap + 1):
        level = []
        for combo in itertools.combinations_with_replacement(range(m), deg):
            a = [0] * m
            for i in combo:
                a[i] += 1
            level.append(tuple(a))
        out.extend(sorted(level, reverse=True))
    return out


def coefficient_rows(polys: Sequence[Poly]) -> list[list[Fraction]]:
    support = sorted({e for p in polys for e in p.terms})
    return [[p.coeff(e) for e in support] for p in polys]


def linearly_independent(polys: Sequence[Poly]) -> bool:
    if any(p.is_zero() for p in polys):
        return False
    return linalg.rank(coefficient_rows(polys)) == len(polys)


def wronskian_matrix(Phi: Sequence[Poly], alphas: Sequence[Exponents]) -> list[list[Poly]]:
    # row i: D^{alpha_i} applied to every function
    return [[diff(phi, a) for phi in Phi] for a in alphas]


def wronskian_det(Phi: Sequence[Poly], A: AdmissibleSet | Sequence[Exponents]) -> Poly:
    alphas = A.alphas if isinstance(A, AdmissibleSet) else tuple(A)
    if len(alphas) != len(Phi):
        raise WronskianError(f"{len(Phi)} functions but {len(alphas)} derivative indices")
    return det_poly_matrix(wronskian_matrix(Phi, alphas))


def _nonzero_at_random_point(M: list[list[Poly]], rng: random.Random) -> bool:
    nv = M[0][0].nvars
    pt = [Fraction(rng.randint(-50, 50), rng.randint(1, 7)) for _ in range(nv)]
    return linalg.det([[p.evaluate(pt) for p in row] for row in M]) != 0


def find_admissible(Phi: Sequence[Poly], cap: int) -> AdmissibleSet:
    """First admissible set (in graded-lex candidate order) with ``|alpha| <= cap``.

    The zero index is always first.  A nonzero value of the determinant at a
    rational point certifies nonvanishing; otherwise the symbolic determinant
    decides.
    """
    Phi = list(Phi)
    if not Phi:
        raise WronskianError("no functions")
    if not linearly_independent(Phi):
        raise WronskianError("functions are linearly dependent over Q")
    m = Phi[0].nvars
    pool = multi_indices(m, cap)
    zero = pool[0]
    rng = random.Random(0)
    for rest in itertools.combinations(pool[1:], len(Phi) - 1):
        alphas = (zero,) + rest
        M = wronskian_matrix(Phi, alphas)
        if _nonzero_at_random_point(M, rng) or not det_poly_matrix(M).is_zero():
            return AdmissibleSet(alphas, cap)
    raise WronskianError(f"no admissible set within cap {cap} for independent functions")


def scaling_check(Phi: Sequence[Poly], h: Poly, A: AdmissibleSet) -> bool:
    """Exact test of ``W(h*Phi) == h^(len Phi) * W(Phi)``."""
    lhs = wronskian_det([h * p for p in Phi], A)
    rhs = h ** len(Phi) * wronskian_det(Phi, A)
    return lhs == rhs


def proportionality_constant(r0_polys: Sequence[Poly], basis_polys: Sequence[Poly], A: AdmissibleSet,
                             coords: Sequence[Sequence] | None = None) -> Fraction:
    """Constant ``C`` with ``W(r0_polys) = C * W(basis_polys)``.

    ``coords[i]`` expresses ``r0_polys[i]`` in ``basis_polys``; when omitted it
    is solved from coefficient vectors.  The identity is asserted exactly.
    """
    if len(r0_polys) != len(basis_polys):
        raise WronskianError("both lists must have the same length")
    if coords is None:
        rows = coefficient_rows(list(r0_polys) + list(basis_polys))
        n = len(r0_polys)
        coords = linalg.express_in_basis(rows[:n], rows[n:])
    C = linalg.det(coords)
    if C == 0:
        raise WronskianError("change of basis is singular")
    w_r0 = wronskian_det(r0_polys, A)
    w = wronskian_det(basis_polys, A)
    if w_r0 != w * C:
        raise AssertionError("W_R0 != C * W")
    return C
