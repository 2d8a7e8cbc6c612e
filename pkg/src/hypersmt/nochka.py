"""Nochka weight systems, computed by exact linear programming.

Given ``q`` linear forms (vectors) in N-subgeneral position with respect to a
space of dimension ``k+1``, find rational weights ``omega_i`` and a constant
``omega_tilde = max omega_i`` with

    i)   0 < omega_i <= 1
    ii)  sum omega_i = omega_tilde * (q - 2N + k - 1) + k + 1
    iii) (k+1)/(2N-k+1) <= omega_tilde <= k/N
    iv)  sum_{i in R} omega_i <= rank{v_i : i in R}   for 0 < #R <= N+1

and pick, for weights ``E_i >= 1``, a full-rank subset ``R0`` dominating
``prod E_i^{omega_i}``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .lp import LPInfeasible, linprog_exact


class WeightError(ValueError):
    pass


@dataclass
class WeightSystem:
    omegas: tuple[Fraction, ...]
    omega_tilde: Fraction
    q: int
    N: int
    k: int
    vectors: list[list[Fraction]] = field(repr=False)
    _ranks: dict = field(default_factory=dict, repr=False)

    def rank(self, R: Sequence[int]) -> int:
        key = tuple(sorted(R))
        if key not in self._ranks:
            self._ranks[key] = linalg.rank([self.vectors[i] for i in key])
        return self._ranks[key]


@dataclass
class WeightReport:
    ok: bool
    violations: list[tuple[str, str]]
    subsets_checked: int


def _bounds(q: int, N: int, k: int) -> tuple[Fraction, Fraction, int]:
    return Fraction(k + 1, 2 * N - k + 1), Fraction(k, N), q - 2 * N + k - 1


class _Model:
    """Variables: omega_1..omega_q, t, s (all >= 0)."""

    def __init__(self, q: int, N: int, k: int, rank_of):
        self.q, self.N, self.k = q, N, k
        self.nv = q + 2
        lo, hi, c = _bounds(q, N, k)
        self.ub: list[tuple[list[Fraction], Fraction]] = []
        self.eq: list[tuple[list[Fraction], Fraction]] = []
        T, S = q, q + 1
        self.eq.append((self._row({**{i: 1 for i in range(q)}, T: -c}), Fraction(k + 1)))
        self.ub.append((self._row({T: -1}), -lo))
        self.ub.append((self._row({T: 1}), hi))
        for i in range(q):
            self.ub.append((self._row({i: 1, T: -1}), Fraction(0)))
            self.ub.append((self._row({i: 1}), Fraction(min(1, rank_of((i,))))))
            self.ub.append((self._row({S: 1, i: -1}), Fraction(0)))
        # iv) is implied by omega_i <= 1 whenever R is independent
        for size in range(2, N + 2):
            for R in itertools.combinations(range(q), size):
                r = rank_of(R)
                if r < size:
                    self.ub.append((self._row({i: 1 for i in R}), Fraction(r)))

    def _row(self, entries: dict[int, object]) -> list[Fraction]:
        row = [Fraction(0)] * self.nv
        for j, v in entries.items():
            row[j] = Fraction(v)
        return row

    def solve(self, objective: dict[int, object], fixed: dict[int, Fraction],
              floor: Fraction = Fraction(0), maximize: bool = False):
        eq = list(self.eq) + [(self._row({j: 1}), v) for j, v in fixed.items()]
        ub = list(self.ub)
        if floor:
            ub += [(self._row({i: -1}), -floor) for i in range(self.q)]
        c = self._row(objective)
        return linprog_exact(c, [r for r, _ in ub], [b for _, b in ub],
                             [r for r, _ in eq], [b for _, b in eq], maximize=maximize)


def compute_weights(vectors: Sequence[Sequence], N: int, k: int) -> WeightSystem:
    """Exact Nochka weights for ``q`` vectors in N-subgeneral position.

    Minimizes ``omega_tilde``, then maximizes the smallest weight, then breaks
    ties by lexicographically minimizing ``(omega_1, ..., omega_q)``.
    """
    vectors = [[Fraction(x) for x in v] for v in vectors]
    q = len(vectors)
    if q <= 2 * N - k + 1:
        raise WeightError(f"need q > 2N-k+1 = {2 * N - k + 1}, got q={q}")
    if N < k:
        raise WeightError("N must be at least k")
    ws = WeightSystem((), Fraction(0), q, N, k, vectors)
    for R in itertools.combinations(range(q), N + 1):
        if ws.rank(R) < k + 1:
            raise WeightError(f"not in {N}-subgeneral position: subset {R} has rank {ws.rank(R)} < {k + 1}")
    model = _Model(q, N, k, ws.rank)
    T, S = q, q + 1
    try:
        x, t_star = model.solve({T: 1}, {})
        x, s_star = model.solve({S: 1}, {T: t_star}, maximize=True)
        if s_star == 0:
            _, s_all = model.solve({S: 1}, {}, maximize=True)
            if s_all == 0:
                raise WeightError("no strictly positive weights exist")
            _, t_star = model.solve({T: 1}, {}, floor=s_all / 2)
            _, s_star = model.solve({S: 1}, {T: t_star}, maximize=True)
    except LPInfeasible as exc:
        raise WeightError(f"weight constraints infeasible: {exc}") from exc
    fixed, floor = _attain_max(model, t_star, s_star)
    for i in range(q):
        if i in fixed:
            continue
        x, val = model.solve({i: 1}, fixed, floor=floor)
        fixed[i] = val
    omegas = tuple(fixed[i] for i in range(q))
    ws.omegas = omegas
    ws.omega_tilde = max(omegas)
    if ws.omega_tilde != t_star:
        raise WeightError("internal: maximum weight differs from the Nochka constant")
    return ws


def _attain_max(model: _Model, t_star: Fraction, s_star: Fraction) -> tuple[dict[int, Fraction], Fraction]:
    """Fix ``t`` and one weight equal to ``t`` so that ``t = max omega_i``."""
    q, T = model.q, model.q
    for floor in (s_star, s_star / 2, s_star / 4):
        for j in range(q):
            try:
                model.solve({}, {T: t_star, j: t_star}, floor=floor)
            except LPInfeasible:
                continue
            return {T: t_star, j: t_star}, floor
    raise WeightError("no weight system attains max omega_i = omega_tilde")


def verify_weights(ws: WeightSystem) -> WeightReport:
    """Exhaustive exact check of properties i)-iv)."""
    q, N, k = ws.q, ws.N, ws.k
    lo, hi, c = _bounds(q, N, k)
    bad: list[tuple[str, str]] = []
    for i, w in enumerate(ws.omegas):
        if not 0 < w <= 1:
            bad.append(("i", f"omega_{i + 1} = {w}"))
    if ws.omega_tilde != max(ws.omegas):
        bad.append(("ii", f"omega_tilde {ws.omega_tilde} != max omega {max(ws.omegas)}"))
    total = sum(ws.omegas, Fraction(0))
    expected = ws.omega_tilde * c + k + 1
    if total != expected:
        bad.append(("ii", f"sum omega = {total} != {expected}"))
    if not lo <= ws.omega_tilde <= hi:
        bad.append(("iii", f"omega_tilde = {ws.omega_tilde} outside [{lo}, {hi}]"))
    checked = 0
    for size in range(1, N + 2):
        for R in itertools.combinations(range(q), size):
            checked += 1
            s = sum((ws.omegas[i] for i in R), Fraction(0))
            if s > ws.rank(R):
                bad.append(("iv", f"subset {R}: sum {s} > rank {ws.rank(R)}"))
    return WeightReport(not bad, bad, checked)


def best_subset(R: Sequence[int], scores: Sequence, ws: WeightSystem) -> tuple[int, ...]:
    """Full-rank ``(k+1)``-subset of ``R`` maximizing the summed scores.

    Ties go to the lexicographically smallest index tuple.
    """
    best = None
    for R0 in itertools.combinations(sorted(R), ws.k + 1):
        if ws.rank(R0) != ws.k + 1:
            continue
        total = sum(scores[i] for i in R0)
        if best is None or total > best[0]:
            best = (total, R0)
    if best is None:
        raise WeightError(f"subset {tuple(R)} has no full-rank (k+1)-subset")
    return best[1]


def select_R0(R: Sequence[int], E: Sequence[float], ws: WeightSystem) -> tuple[int, ...]:
    """Subset ``R0`` with ``prod_{R} E_i^{omega_i} <= prod_{R0} E_i``.

    ``E`` is indexed by family position (length ``q``); indices are 0-based.
    """
    if len(R) != ws.N + 1:
        raise ValueError(f"R must have N+1 = {ws.N + 1} elements")
    if any(E[i] < 1 for i in R):
        raise ValueError("all E_i must be >= 1")
    logs = {i: math.log(E[i]) for i in R}
    R0 = best_subset(R, logs, ws)
    lhs = sum(float(ws.omegas[i]) * logs[i] for i in R)
    rhs = sum(logs[i] for i in R0)
    if lhs > rhs + 1e-12 * max(1.0, abs(rhs)):
        raise AssertionError(f"weighted product exceeds the R0 product on {tuple(R)}")
    return R0
