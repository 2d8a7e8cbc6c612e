"""Position of hypersurface families relative to a variety.

Covers N-subgeneral position certificates, ranks of quotient classes, the
randomized generic subspace and completion hypersurfaces (with exact
verification), and sampled comparison constants for ``max |Q_i| / ||x||^d``.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import linalg
from .ideal import InhomogeneousError, QuotClass, Variety, projective_empty, quot_class
from .numeric import eval_points
from .poly import Poly


class PositionError(ValueError):
    pass


class InconclusiveError(PositionError):
    def __init__(self, subset: tuple[int, ...]):
        super().__init__(f"emptiness undecided for subset {subset}")
        self.subset = subset


class RetryBudgetExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class Hypersurface:
    poly: Poly
    degree: int

    def __post_init__(self):
        if not self.poly.is_homogeneous() or self.poly.is_zero():
            raise InhomogeneousError(f"hypersurface not homogeneous: {self.poly}")
        if self.poly.degree() != self.degree:
            raise ValueError(f"declared degree {self.degree} but {self.poly} has degree {self.poly.degree()}")


@dataclass
class Family:
    """Hypersurfaces ``Q_1..Q_q`` with subgeneral index ``N`` on a variety."""

    members: list[Hypersurface]
    N: int
    variety: Variety
    common_degree_d: int = field(init=False)
    lifted: list[QuotClass] = field(init=False)

    def __post_init__(self):
        if not self.members:
            raise ValueError("empty family")
        self.common_degree_d = math.lcm(*(h.degree for h in self.members))
        self.lifted = [quot_class(p, self.variety) for p in self.lifted_polys()]
        for i, c in enumerate(self.lifted):
            if c.is_zero():
                raise PositionError(f"Q_{i + 1} lies in I(V)")

    @classmethod
    def from_polys(cls, polys: Sequence[Poly], N: int, variety: Variety) -> Family:
        return cls([Hypersurface(p, p.degree()) for p in polys], N, variety)

    @property
    def q(self) -> int:
        return len(self.members)

    @property
    def polys(self) -> list[Poly]:
        return [h.poly for h in self.members]

    def lifted_polys(self) -> list[Poly]:
        d = self.common_degree_d
        return [h.poly ** (d // h.degree) for h in self.members]

    def vectors(self) -> list[list[Fraction]]:
        return [list(c.coords) for c in self.lifted]


@dataclass
class PositionCertificate:
    is_subgeneral: bool
    failing_subset: tuple[int, ...] | None
    verdicts: dict[tuple[int, ...], str]
    witnesses: dict[tuple[int, ...], tuple[int, ...]] = field(default_factory=dict)


def check_subgeneral(F: Family, V: Variety | None = None, degree_cap: int | None = None) -> PositionCertificate:
    """Certify that no ``N+1`` members meet ``V``.

    Subsets are 0-based index tuples.  An undecided subset raises
    :class:`InconclusiveError` unless another subset already refutes the
    position.
    """
    V = V or F.variety
    N = F.N
    if F.q < N + 1:
        raise PositionError(f"need q >= N+1, got q={F.q}, N={N}")
    if degree_cap is None:
        degree_cap = F.common_degree_d * (N + 1) + V.ambient_n + 1
    verdicts: dict[tuple[int, ...], str] = {}
    witnesses = {}
    failing = None
    undecided = None
    for R in itertools.combinations(range(F.q), N + 1):
        res = projective_empty(V.generators + [F.members[i].poly for i in R], degree_cap, nvars=V.nvars)
        verdicts[R] = res.verdict
        if res.verdict == "nonempty":
            witnesses[R] = res.witness
            if failing is None:
                failing = R
        elif res.verdict == "inconclusive" and undecided is None:
            undecided = R
    if failing is None and undecided is not None:
        raise InconclusiveError(undecided)
    return PositionCertificate(failing is None, failing, verdicts, witnesses)


def rank_classes(R: Sequence[int], F: Family) -> int:
    if not R:
        raise ValueError("empty index set")
    return linalg.rank([F.lifted[i].coords for i in R])


def full_rank_subsets(F: Family, size: int | None = None) -> list[tuple[int, ...]]:
    """All index sets ``R0`` with ``#R0 = rank = size`` (default ``k+1``)."""
    size = F.variety.dim_k + 1 if size is None else size
    return [R for R in itertools.combinations(range(F.q), size) if rank_classes(R, F) == size]


@dataclass
class Subspace:
    """Subspace ``L`` of Q^M spanned by ``basis``; linear forms restrict by ``B^T v``."""

    basis: list[list[Fraction]]
    ambient_dim: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def restrict(self, v: Sequence) -> list[Fraction]:
        return [sum((Fraction(a) * b for a, b in zip(v, col)), Fraction(0)) for col in self.basis]


def rank_preserved(vectors: Sequence[Sequence], L: Subspace, max_size: int) -> bool:
    restricted = [L.restrict(v) for v in vectors]
    for size in range(1, max_size + 1):
        for S in itertools.combinations(range(len(vectors)), size):
            if linalg.rank([restricted[i] for i in S]) != linalg.rank([vectors[i] for i in S]):
                return False
    return True


def generic_subspace(vectors: Family | Sequence[Sequence], target_dim: int | None = None,
                     seed: int = 0, retries: int = 200) -> Subspace:
    """Random subspace of dimension ``target_dim`` on which every linear form
    stays nonzero and every subset of at most ``target_dim`` forms keeps its
    rank.  Deterministic per seed; verified exactly.
    """
    if isinstance(vectors, Family):
        if target_dim is None:
            target_dim = vectors.variety.dim_k + 1
        vectors = vectors.vectors()
    vectors = [list(map(Fraction, v)) for v in vectors]
    if target_dim is None:
        raise ValueError("target_dim required for raw vectors")
    M = len(vectors[0])
    if target_dim > M:
        raise ValueError(f"target_dim {target_dim} exceeds ambient dimension {M}")
    if target_dim == M:
        return Subspace([[Fraction(int(i == j)) for i in range(M)] for j in range(M)], M)
    rng = random.Random(seed)
    for _ in range(retries):
        basis = [[Fraction(rng.randint(-9, 9)) for _ in range(M)] for _ in range(target_dim)]
        if linalg.rank(basis) < target_dim:
            continue
        L = Subspace(basis, M)
        if rank_preserved(vectors, L, target_dim):
            return L
    raise RetryBudgetExhausted("no generic subspace found within the retry budget")


def completion_rank_ok(F: Family, T_coords: Sequence[Sequence], r0_sets: Sequence[Sequence[int]]) -> bool:
    """``{[Q_i]}_{i in R0}`` plus the T classes span I_d(V) for every R0."""
    H = len(F.lifted[0].coords)
    for R0 in r0_sets:
        rows = [F.lifted[i].coords for i in R0] + [list(t) for t in T_coords]
        if len(rows) != H or linalg.det(rows) == 0:
            return False
    return True


def complete_basis(F: Family, r0_sets: Sequence[Sequence[int]] | None = None,
                   seed: int = 0, retries: int = 200) -> list[Poly]:
    """``H_V(d) - k - 1`` forms of degree ``d`` completing every full-rank
    ``(k+1)``-subset of the family to a basis of I_d(V)."""
    V = F.variety
    k = V.dim_k
    d = F.common_degree_d
    basis = V.basis_polys(d)
    H = len(basis)
    if r0_sets is None:
        r0_sets = full_rank_subsets(F)
    else:
        for R0 in r0_sets:
            if len(R0) != k + 1 or rank_classes(R0, F) != k + 1:
                raise PositionError(f"subset {tuple(R0)} is not of full rank k+1")
    count = H - k - 1
    if count < 0:
        raise PositionError("H_V(d) < k+1")
    if count == 0:
        return []
    rng = random.Random(seed)
    for _ in range(retries):
        coords = [[Fraction(rng.randint(-9, 9)) for _ in range(H)] for _ in range(count)]
        if completion_rank_ok(F, coords, r0_sets):
            return [sum((b * c for b, c in zip(basis, row)), Poly.zero(V.nvars)) for row in coords]
    raise RetryBudgetExhausted("no completion found within the retry budget")


def curve_points(components: Sequence[Poly], count: int, seed: int = 0) -> np.ndarray:
    """Points ``f(z)`` for log-uniform random ``z`` with ``10^-2 <= |z| <= 10^2``."""
    rng = np.random.default_rng(seed)
    z = 10 ** rng.uniform(-2, 2, count) * np.exp(2j * np.pi * rng.uniform(0, 1, count))
    pts = np.stack([eval_points(c, z[:, None]) for c in components], axis=1)
    return pts


def position_constants(R: Sequence[int], F: Family, points: np.ndarray | None) -> tuple[float, float]:
    """Sampled min and max of ``max_{i in R} |Q_i(x)| / ||x||^d`` over ``points``.

    Uses the lifted forms ``Q_i^{d/d_i}``; these are estimates, not bounds.
    """
    if points is None or len(points) == 0:
        raise PositionError("position constants need sample points of V (a curve parametrization)")
    res = projective_empty(F.variety.generators + [F.members[i].poly for i in R], nvars=F.variety.nvars)
    if res.verdict != "empty":
        raise PositionError(f"subset {tuple(R)} meets V; constants are not positive")
    points = np.asarray(points, dtype=complex)
    lifted = F.lifted_polys()
    d = F.common_degree_d
    vals = np.max(np.abs(np.stack([eval_points(lifted[i], points) for i in R])), axis=0)
    h = vals / np.linalg.norm(points, axis=1) ** d
    return float(h.min()), float(h.max())
