"""Homogeneous ideals: Groebner bases, normal forms, Hilbert functions.

Everything here works in graded-lex order with ``x0 > x1 > ... > xn``.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .poly import Exponents, Poly, grlex_key, monomials_of_degree, substitute


class InhomogeneousError(ValueError):
    pass


def _divides(a: Exponents, b: Exponents) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(max(x, y) for x, y in zip(a, b))


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple[Poly, ...]
    nvars: int
    order: str = "grlex"
    reduced: bool = True

    @property
    def leads(self) -> list[Exponents]:
        return [g.lead_monomial() for g in self.generators]

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def normal_form(p: Poly, gb: GroebnerBasis | Sequence[Poly]) -> Poly:
    """Full reduction of ``p`` modulo the basis."""
    gens = list(gb.generators if isinstance(gb, GroebnerBasis) else gb)
    leads = [(g.lead_monomial(), g.lead_coeff(), g) for g in gens]
    rem: dict[Exponents, Fraction] = {}
    cur = p
    while cur.terms:
        m = cur.lead_monomial()
        c = cur.terms[m]
        for lm, lc, g in leads:
            if _divides(lm, m):
                shift = tuple(x - y for x, y in zip(m, lm))
                cur = cur - g.mul_monomial(shift, c / lc)
                break
        else:
            rem[m] = c
            cur = Poly._raw({e: v for e, v in cur.terms.items() if e != m}, cur.nvars)
    return Poly(rem, p.nvars)


def s_polynomial(f: Poly, g: Poly) -> Poly:
    lf, lg = f.lead_monomial(), g.lead_monomial()
    lcm = _lcm(lf, lg)
    sf = tuple(a - b for a, b in zip(lcm, lf))
    sg = tuple(a - b for a, b in zip(lcm, lg))
    return f.mul_monomial(sf, 1 / f.lead_coeff()) - g.mul_monomial(sg, 1 / g.lead_coeff())


def _check_homogeneous(gens: Sequence[Poly]) -> None:
    for g in gens:
        if not g.is_homogeneous():
            raise InhomogeneousError(f"generator not homogeneous: {g}")


def buchberger(gens: Sequence[Poly], nvars: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of a homogeneous ideal.

    Pairs are processed by lcm degree; pairs with coprime leads are skipped.
    """
    gens = [g for g in gens if not g.is_zero()]
    if nvars is None:
        if not gens:
            raise ValueError("nvars required for an empty generating set")
        nvars = gens[0].nvars
    for g in gens:
        if g.nvars != nvars:
            raise ValueError("generators live in different rings")
    _check_homogeneous(gens)
    G: list[Poly] = []
    for g in gens:
        r = normal_form(g, G) if G else g
        if not r.is_zero():
            G.append(r.monic())
    pairs = [(i, j) for j in range(len(G)) for i in range(j)]
    while pairs:
        pairs.sort(key=lambda ij: (sum(_lcm(G[ij[0]].lead_monomial(), G[ij[1]].lead_monomial())), ij))
        i, j = pairs.pop(0)
        li, lj = G[i].lead_monomial(), G[j].lead_monomial()
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        r = normal_form(s_polynomial(G[i], G[j]), G)
        if not r.is_zero():
            G.append(r.monic())
            n = len(G) - 1
            pairs.extend((k, n) for k in range(n))
    return GroebnerBasis(tuple(_interreduce(G)), nvars)


def _interreduce(G: list[Poly]) -> list[Poly]:
    minimal: list[Poly] = []
    for g in sorted(G, key=lambda p: grlex_key(p.lead_monomial())):
        lm = g.lead_monomial()
        if not any(_divides(h.lead_monomial(), lm) for h in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        tail = g - Poly({g.lead_monomial(): g.lead_coeff()}, g.nvars)
        r = Poly({g.lead_monomial(): 1}, g.nvars) + normal_form(tail * (1 / g.lead_coeff()), others)
        reduced.append(r)
    return sorted(reduced, key=lambda p: grlex_key(p.lead_monomial()), reverse=True)


def is_groebner(gb: GroebnerBasis) -> bool:
    """Every S-pair reduces to zero."""
    G = list(gb.generators)
    return all(
        normal_form(s_polynomial(G[i], G[j]), G).is_zero()
        for i, j in itertools.combinations(range(len(G)), 2)
    )


def generates_same_ideal(gb: GroebnerBasis, gens: Sequence[Poly]) -> bool:
    """Input generators reduce to zero and ``gb`` is a Groebner basis.

    The other inclusion holds by construction: each basis element was produced
    from the inputs by ideal operations.
    """
    return is_groebner(gb) and all(normal_form(g, gb).is_zero() for g in gens)


@dataclass(frozen=True)
class QuotClass:
    degree_d: int
    coords: tuple[Fraction, ...]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: QuotClass) -> QuotClass:
        if self.degree_d != other.degree_d:
            raise ValueError("classes of different degrees")
        return QuotClass(self.degree_d, tuple(a + b for a, b in zip(self.coords, other.coords)))


@dataclass
class Variety:
    """Projective variety in P^n given by homogeneous generators of I(V)."""

    ambient_n: int
    generators: list[Poly]
    dim_k: int
    gb: GroebnerBasis = field(init=False)
    quotient_bases: dict[int, list[Exponents]] = field(init=False, default_factory=dict)

    def __post_init__(self):
        self.generators = [g for g in self.generators if not g.is_zero()]
        for g in self.generators:
            if g.nvars != self.ambient_n + 1:
                raise ValueError(f"generator {g} is not in {self.ambient_n + 1} variables")
        _check_homogeneous(self.generators)
        if not 0 <= self.dim_k <= self.ambient_n:
            raise ValueError("dim_k must lie in [0, ambient_n]")
        self.gb = buchberger(self.generators, self.nvars)
        self._lock = threading.Lock()

    @property
    def nvars(self) -> int:
        return self.ambient_n + 1

    @classmethod
    def projective_space(cls, n: int) -> Variety:
        return cls(n, [], n)

    def standard_monomials(self, d: int) -> list[Exponents]:
        if d < 0:
            raise ValueError("degree must be non-negative")
        cached = self.quotient_bases.get(d)
        if cached is not None:
            return cached
        with self._lock:
            if d not in self.quotient_bases:
                leads = self.gb.leads
                self.quotient_bases[d] = [
                    m for m in monomials_of_degree(self.nvars, d)
                    if not any(_divides(lm, m) for lm in leads)
                ]
            return self.quotient_bases[d]

    def basis_polys(self, d: int) -> list[Poly]:
        return [Poly({m: 1}, self.nvars) for m in self.standard_monomials(d)]

    def contains_curve(self, components: Sequence[Poly]) -> list[Poly]:
        """Generators whose pullback along ``components`` is nonzero."""
        return [g for g in self.generators if not substitute(g, components).is_zero()]


def hilbert_function(V: Variety, d: int) -> int:
    """Dimension of degree-``d`` forms modulo I(V): the standard-monomial count."""
    if d <= 0:
        raise ValueError("Hilbert function is evaluated for d >= 1")
    return len(V.standard_monomials(d))


def quot_class(Q: Poly, V: Variety) -> QuotClass:
    """Coordinates of [Q] in the standard-monomial basis of I_d(V)."""
    if not Q.is_homogeneous():
        raise InhomogeneousError(f"hypersurface not homogeneous: {Q}")
    if Q.nvars != V.nvars:
        raise ValueError("polynomial ring does not match the variety")
    d = Q.degree()
    if d < 0:
        raise ValueError("zero polynomial has no degree")
    nf = normal_form(Q, V.gb)
    return QuotClass(d, tuple(nf.coeff(m) for m in V.standard_monomials(d)))


def finite_difference(seq: Sequence[int], order: int) -> list[int]:
    out = list(seq)
    for _ in range(order):
        out = [b - a for a, b in zip(out, out[1:])]
    return out


def hilbert_dimension_consistent(V: Variety) -> bool:
    """Check that H_V fits a degree-``dim_k`` polynomial with positive lead.

    Windows of ``k + 2`` consecutive degrees are tried from ``d = 1`` up to the
    largest Groebner lead degree, since H_V may only agree with its Hilbert
    polynomial from the regularity on.
    """
    k = V.dim_k
    top = max([sum(lm) for lm in V.gb.leads] + [1])
    for start in range(1, top + 1):
        vals = [hilbert_function(V, d) for d in range(start, start + k + 2)]
        if finite_difference(vals, k + 1) == [0] and all(x > 0 for x in finite_difference(vals, k)):
            return True
    return False


@dataclass
class Emptiness:
    verdict: str                       # "empty" | "nonempty" | "inconclusive"
    witness: tuple[int, ...] | None = None
    powers: dict[int, int] = field(default_factory=dict)
    complex_nonempty: bool | None = None


def _primitive(v: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints] if g else ints
    first = next((x for x in ints if x), 0)
    return tuple(-x for x in ints) if first < 0 else tuple(ints)


def _points_of_height(dim: int, h: int):
    """Integer vectors in Z^dim with max |coord| == h."""
    rng = range(-h, h + 1)
    for v in itertools.product(rng, repeat=dim):
        if max(abs(x) for x in v) == h:
            yield v


def find_witness(gens: Sequence[Poly], nvars: int, gb: GroebnerBasis | None = None,
                 height_cap: int = 3, budget: int = 50000) -> tuple[int, ...] | None:
    """Search a rational projective zero of ``gens`` by bounded height.

    Candidates are drawn from the common kernel of the linear forms in the
    ideal, which shrinks the search to the linear span of the zero set.
    """
    if gb is None:
        gb = buchberger(gens, nvars)
    linear = [g for g in gb.generators if g.degree() == 1]
    rows = [[g.coeff(tuple(int(i == j) for j in range(nvars))) for i in range(nvars)] for g in linear]
    K = linalg.nullspace(rows, ncols=nvars) if rows else linalg.nullspace([], ncols=nvars)
    if not K:
        return None
    r = len(K)
    seen = set()
    tried = 0
    for h in range(1, height_cap + 1):
        for t in _points_of_height(r, h):
            point = [sum((Fraction(ti) * K[j][i] for j, ti in enumerate(t)), Fraction(0)) for i in range(nvars)]
            if not any(point):
                continue
            prim = _primitive(point)
            if prim in seen:
                continue
            seen.add(prim)
            tried += 1
            if all(g.evaluate(prim) == 0 for g in gens):
                return prim
            if tried >= budget:
                return None
    return None


def projective_empty(gens: Sequence[Poly], degree_cap: int | None = None,
                     nvars: int | None = None, height_cap: int = 3) -> Emptiness:
    """Decide emptiness of the projective zero set of homogeneous ``gens``.

    "empty" is certified by powers ``x_i^e`` (``e <= degree_cap``) lying in the
    ideal; "nonempty" by an exact rational zero.  ``complex_nonempty`` records
    the Groebner-basis verdict over C (some variable has no power in the ideal).
    """
    gens = [g for g in gens if not g.is_zero()]
    if nvars is None:
        nvars = gens[0].nvars
    _check_homogeneous(gens)
    if degree_cap is None:
        degree_cap = sum(max(g.degree(), 1) for g in gens) + nvars
    gb = buchberger(gens, nvars)
    powers: dict[int, int] = {}
    for lm in gb.leads:
        support = [i for i, e in enumerate(lm) if e]
        if len(support) == 1:
            i = support[0]
            powers[i] = min(powers.get(i, lm[i]), lm[i])
    complex_nonempty = len(powers) < nvars
    if not complex_nonempty and all(e <= degree_cap for e in powers.values()):
        return Emptiness("empty", powers=powers, complex_nonempty=False)
    witness = find_witness(gens, nvars, gb, height_cap=height_cap)
    if witness is not None:
        return Emptiness("nonempty", witness=witness, powers=powers, complex_nonempty=True)
    return Emptiness("inconclusive", powers=powers, complex_nonempty=complex_nonempty)
