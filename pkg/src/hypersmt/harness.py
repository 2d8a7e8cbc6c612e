"""Theorem-level checks assembled from the lower modules.

Every hypothesis is verified rather than assumed.  A scenario that violates a
hypothesis produces a report with ``status == "hypothesis-violated"`` instead
of raising, so contrapositive experiments can be run and inspected.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .ideal import Variety
from .nevanlinna import (
    Divisor,
    GrowthTable,
    RationalCurve,
    characteristic,
    counting,
    doubling_grid,
    log_norm_mean,
    mean_log_abs_closed,
    zero_divisor,
)
from .nochka import WeightSystem, best_subset, compute_weights
from .poly import (
    Poly,
    coprime_basis,
    divides,
    exact_div,
    gcd_univariate,
    multiplicity,
    squarefree_decompose,
    substitute,
)
from .position import (
    Family,
    InconclusiveError,
    check_subgeneral,
    generic_subspace,
)
from .wronskian import AdmissibleSet, coefficient_rows, find_admissible, wronskian_det

PASS, FAIL, VIOLATED, INCONCLUSIVE = "pass", "fail", "hypothesis-violated", "inconclusive"
TOL = 1e-9


def _tol(*vals: float) -> float:
    return TOL * max([1.0] + [abs(v) for v in vals])


def smt_threshold(N: int, k: int, H: int) -> Fraction:
    """``(2N - k + 1) H / (k + 1)``, the bound ``q`` has to exceed."""
    return Fraction((2 * N - k + 1) * H, k + 1)


def pull(Q: Poly, f: RationalCurve) -> Poly:
    return substitute(Q, list(f.components))


def _primitive(vec: Sequence[Fraction]) -> list[Fraction]:
    den = math.lcm(*(Fraction(x).denominator for x in vec))
    ints = [int(Fraction(x) * den) for x in vec]
    g = math.gcd(*ints) or 1
    ints = [x // g for x in ints]
    last = next(x for x in reversed(ints) if x)
    sign = 1 if last > 0 else -1
    return [Fraction(sign * x) for x in ints]


# -- nondegeneracy ----------------------------------------------------------

@dataclass
class Nondegeneracy:
    ok: bool
    killing_class: Poly | None
    basis: list[Poly]
    pulled: list[Poly]


def nondegeneracy(V: Variety, d: int, f: RationalCurve) -> Nondegeneracy:
    """Decide whether some nonzero class of I_d(V) vanishes along ``f``.

    The standard monomials ``A_i`` of degree ``d`` form a basis of I_d(V), so
    ``f`` is degenerate exactly when the pullbacks ``A_i(f)`` are linearly
    dependent; a dependency names the killing class.
    """
    basis = V.basis_polys(d)
    pulled = [pull(A, f) for A in basis]
    rows = coefficient_rows(pulled)
    if rows and not rows[0]:
        kernel = [[Fraction(int(i == j)) for j in range(len(rows))] for i in range(len(rows))]
    else:
        kernel = linalg.left_kernel(rows)
    if not kernel:
        return Nondegeneracy(True, None, basis, pulled)
    vec = _primitive(kernel[0])
    killer = sum((A * c for A, c in zip(basis, vec)), Poly.zero(V.nvars))
    return Nondegeneracy(False, killer, basis, pulled)


def _check_curve_on(V: Variety, f: RationalCurve) -> None:
    if len(f.components) != V.nvars:
        raise ValueError(f"curve has {len(f.components)} components but V lives in P^{V.ambient_n}")
    bad = V.contains_curve(list(f.components))
    if bad:
        raise ValueError(f"curve does not lie on V: generator {bad[0].to_string()} has nonzero pullback")


def weights_for(F: Family, seed: int = 0) -> WeightSystem:
    """Nochka weights of the family after restriction to a generic (k+1)-space."""
    L = generic_subspace(F, seed=seed)
    vectors = [L.restrict(v) for v in F.vectors()]
    return compute_weights(vectors, F.N, F.variety.dim_k)


# -- first main theorem bound -------------------------------------------------

def beta(Q: Poly) -> Fraction:
    """Sum of absolute coefficients: ``|Q(x)| <= beta(Q) ||x||^deg Q``."""
    return sum((abs(c) for c in Q.terms.values()), Fraction(0))


def fmt_constant(Q: Poly, f: RationalCurve) -> float:
    """Explicit ``C`` with ``N_{Q(f)}(r) <= deg(Q) T_f(r) + C`` for all ``r > 1``.

    Jensen gives ``N_{Q(f)}(r) = mean_r log|Q(f)| - mean_1 log|Q(f)|`` and the
    integrand is at most ``log beta + deg(Q) log ||f||``.
    """
    P = pull(Q, f)
    return (math.log(float(beta(Q))) + Q.degree() * log_norm_mean(f, 1.0)
            - mean_log_abs_closed(P, 1.0))


@dataclass
class FmtRow:
    r: float
    difference: float
    bound: float
    ok: bool


def fmt_check(Q: Poly, f: RationalCurve, r_grid: Sequence[float]) -> list[FmtRow]:
    P = pull(Q, f)
    if P.is_zero():
        raise ValueError("Q(f) vanishes identically")
    D = zero_divisor(P)
    C = fmt_constant(Q, f)
    rows = []
    for r in r_grid:
        diff = counting(D, r) - Q.degree() * characteristic(f, r)
        rows.append(FmtRow(r, diff, C, diff <= C + 1e-6))
    return rows


# -- Theorem-level SMT check -------------------------------------------------

@dataclass
class SmtRow:
    r: float
    T_f: float
    N_trunc: list[float]
    LHS: float
    RHS: float
    margin: float
    RHS_lifted: float


@dataclass
class SmtReport:
    scenario_id: str
    q: int
    N: int
    k: int
    d: int
    H: int
    coeff: Fraction
    status: str
    message: str = ""
    rows: list[SmtRow] = field(default_factory=list)
    r0: float = 10.0
    min_margin: float | None = None
    trend: list[tuple[float, float]] = field(default_factory=list)
    trend_ok: bool = True
    killing_class: Poly | None = None
    failing_subset: tuple[int, ...] | None = None

    def table(self) -> GrowthTable:
        t = GrowthTable([row.r for row in self.rows])
        t.add("T_f", [row.T_f for row in self.rows])
        for i in range(self.q):
            t.add(f"N_trunc_Q{i + 1}", [row.N_trunc[i] for row in self.rows])
        t.add("LHS", [row.LHS for row in self.rows])
        t.add("RHS", [row.RHS for row in self.rows])
        t.add("margin", [row.margin for row in self.rows])
        return t


def _position_verdict(F: Family) -> tuple[str, str, tuple[int, ...] | None]:
    try:
        cert = check_subgeneral(F)
    except InconclusiveError as exc:
        return INCONCLUSIVE, str(exc), exc.subset
    if not cert.is_subgeneral:
        R = cert.failing_subset
        wit = cert.witnesses.get(R)
        names = ", ".join(f"Q{i + 1}" for i in R)
        return VIOLATED, f"not in {F.N}-subgeneral position: {names} meet V at {wit}", R
    return PASS, "", None


def smt_check(V: Variety, F: Family, f: RationalCurve, r_grid: Sequence[float],
              r0: float = 10.0, doublings: int = 5, scenario_id: str = "") -> SmtReport:
    """Tabulate both sides of the truncated second main theorem on ``r_grid``.

    ``LHS = coeff * T_f`` and ``RHS = sum (1/d_i) N^{[H-1]}_{Q_i(f)}``.  The
    sharper form obtained from ``Q_i^{d/d_i}`` is kept in ``RHS_lifted``.
    """
    _check_curve_on(V, f)
    k, N, q, d = V.dim_k, F.N, F.q, F.common_degree_d
    H = len(V.standard_monomials(d))
    coeff = q - smt_threshold(N, k, H)
    report = SmtReport(scenario_id, q, N, k, d, H, coeff, PASS, r0=r0)
    status, msg, subset = _position_verdict(F)
    if status != PASS:
        report.status, report.message, report.failing_subset = status, msg, subset
        return report
    nd = nondegeneracy(V, d, f)
    if not nd.ok:
        report.status = VIOLATED
        report.killing_class = nd.killing_class
        report.message = f"f is degenerate over I_{d}(V): killed by {nd.killing_class.to_string()}"
        return report
    if coeff < 0:
        report.status = VIOLATED
        report.message = f"q = {q} is below the threshold {smt_threshold(N, k, H)}"
        return report

    M = H - 1
    divs = [zero_divisor(pull(h.poly, f)) for h in F.members]
    lifted = [zero_divisor(pull(Q, f)) for Q in F.lifted_polys()]
    degs = [h.degree for h in F.members]

    def row_at(r: float) -> SmtRow:
        T = characteristic(f, r)
        trunc = [counting(D, r, M) for D in divs]
        rhs = sum(n / di for n, di in zip(trunc, degs))
        rhs_l = sum(counting(D, r, M) for D in lifted) / d
        lhs = float(coeff) * T
        return SmtRow(r, T, trunc, lhs, rhs, rhs - lhs, rhs_l)

    report.rows = [row_at(r) for r in r_grid]
    tail = [row.margin for row in report.rows if row.r >= r0]
    report.min_margin = min(tail) if tail else None
    for r in doubling_grid(r0, r0 * 2 ** doublings):
        row = row_at(r)
        report.trend.append((r, row.margin / row.T_f))
    ratios = [v for _, v in report.trend]
    report.trend_ok = all(b >= a - _tol(a) for a, b in zip(ratios, ratios[1:]))
    problems = []
    if report.min_margin is not None and report.min_margin < -_tol(report.min_margin):
        problems.append(f"negative margin {report.min_margin:.6g} for r >= {r0}")
    if not report.trend_ok and ratios[-1] < 0:
        # a decreasing ratio only matters if it has already crossed zero
        problems.append("margin/T_f decreases below zero on the doubling grid")
    lifted_bad = [row.r for row in report.rows if row.r >= r0 and row.RHS_lifted - row.LHS < -_tol(row.LHS)]
    if lifted_bad:
        problems.append(f"lifted margin negative at r = {lifted_bad[0]:.6g}")
    if problems:
        report.status, report.message = FAIL, "; ".join(problems)
    else:
        report.message = f"coeff = {coeff}; min margin for r >= {r0}: {report.min_margin}"
    return report


# -- the pointwise claim behind the SMT -------------------------------------

@dataclass
class ClaimRow:
    factor: Poly
    nus: tuple[int, ...]
    nu_W: int
    R: tuple[int, ...]
    R1: tuple[int, ...]
    weighted: Fraction
    r1_sum: int
    ok: bool


@dataclass
class ClaimReport:
    status: str
    message: str
    weights: WeightSystem | None = None
    admissible: AdmissibleSet | None = None
    W: Poly | None = None
    rows: list[ClaimRow] = field(default_factory=list)
    integrated: list[tuple[float, float, float]] = field(default_factory=list)
    diagnostic: list[tuple[float, float]] = field(default_factory=list)
    diagnostic_ok: bool = True

    @property
    def pointwise_ok(self) -> bool:
        return all(row.ok for row in self.rows)


def claim_check(V: Variety, F: Family, f: RationalCurve, ws: WeightSystem | None = None,
                A: AdmissibleSet | None = None, r_grid: Sequence[float] = (),
                seed: int = 0, r0: float = 10.0, doublings: int = 5) -> ClaimReport:
    """Check ``nu_W >= sum_R omega_i max(nu_i - H + 1, 0)`` at every zero, exactly.

    Zeros are grouped by the elements of a coprime basis of all ``Q_i(f)`` and
    ``W``, so every multiplicity is an exact integer.  The chain
    ``sum_R omega_i e_i <= sum_{R1} e_i <= nu_W`` is checked link by link.
    """
    _check_curve_on(V, f)
    k, N, q, d = V.dim_k, F.N, F.q, F.common_degree_d
    H = len(V.standard_monomials(d))
    nd = nondegeneracy(V, d, f)
    if not nd.ok:
        return ClaimReport(VIOLATED, f"f is degenerate: killed by {nd.killing_class.to_string()}")
    status, msg, _ = _position_verdict(F)
    if status != PASS:
        return ClaimReport(status, msg)
    if ws is None:
        if q <= 2 * N - k + 1:
            return ClaimReport(VIOLATED, f"no Nochka weights: q = {q} does not exceed 2N-k+1 = {2 * N - k + 1}")
        ws = weights_for(F, seed)
    if A is None:
        A = find_admissible(nd.pulled, H - 1)
    W = wronskian_det(nd.pulled, A)
    if W.is_zero():
        raise AssertionError("internal: Wronskian vanishes for a nondegenerate curve")
    P = [pull(Q, f) for Q in F.lifted_polys()]
    report = ClaimReport(PASS, "", ws, A, W)
    for b in coprime_basis(P + [W]):
        nus = tuple(multiplicity(b, p) if divides(b, p) else 0 for p in P)
        if not any(nus):
            continue
        R = [i for i in range(q) if nus[i]]
        if len(R) > N:
            raise AssertionError(f"internal: {len(R)} members vanish at one point")
        R += [i for i in range(q) if i not in R][: N + 1 - len(R)]
        R = tuple(sorted(R))
        e = [max(n - H + 1, 0) for n in nus]
        R1 = best_subset(R, e, ws)
        weighted = sum((ws.omegas[i] * e[i] for i in R), Fraction(0))
        r1_sum = sum(e[i] for i in R1)
        nu_W = multiplicity(b, W) if divides(b, W) else 0
        report.rows.append(ClaimRow(b, nus, nu_W, R, R1, weighted, r1_sum,
                                    weighted <= r1_sum <= nu_W))
    Pdiv = [zero_divisor(p) for p in P]
    Wdiv = zero_divisor(W)
    om = [float(w) for w in ws.omegas]
    for r in r_grid:
        lhs = sum(w * counting(D, r) for w, D in zip(om, Pdiv)) - counting(Wdiv, r)
        rhs = sum(w * counting(D, r, H - 1) for w, D in zip(om, Pdiv))
        report.integrated.append((r, lhs, rhs))
    report.diagnostic = _weighted_diagnostic(f, Pdiv, Wdiv, ws, d, H, doubling_grid(r0, r0 * 2 ** doublings))
    slack = [v for _, v in report.diagnostic]
    report.diagnostic_ok = all(v <= TOL for v in slack) or all(b <= a + _tol(a) for a, b in zip(slack, slack[1:]))
    bad_int = [r for r, lhs, rhs in report.integrated if lhs > rhs + _tol(lhs, rhs)]
    if not report.pointwise_ok:
        bad = next(row for row in report.rows if not row.ok)
        report.status = FAIL
        report.message = (f"pointwise claim fails at zeros of {bad.factor.to_string()}: "
                          f"{bad.weighted} <= {bad.r1_sum} <= {bad.nu_W} is false")
    elif bad_int:
        report.status = FAIL
        report.message = f"integrated claim fails at r = {bad_int[0]:.6g}"
    else:
        report.message = f"{len(report.rows)} zero classes checked exactly"
    return report


def _weighted_diagnostic(f: RationalCurve, Pdiv: list[Divisor], Wdiv: Divisor, ws: WeightSystem,
                         d: int, H: int, radii: Sequence[float]) -> list[tuple[float, float]]:
    """Slack/T_f series of the weighted intermediate inequality.

    ``slack = d (q - 2N + k - 1 - (H - k - 1)/wt) T_f - sum (w_i/wt) N_i + N_W/wt``
    """
    wt = float(ws.omega_tilde)
    c = d * (ws.q - 2 * ws.N + ws.k - 1 - (H - ws.k - 1) / wt)
    out = []
    for r in radii:
        T = characteristic(f, r)
        main = sum(float(w) / wt * counting(D, r) for w, D in zip(ws.omegas, Pdiv)) - counting(Wdiv, r) / wt
        out.append((r, (c * T - main) / T))
    return out


# -- comparability of characteristics ----------------------------------------

@dataclass
class ComparabilityReport:
    status: str
    message: str
    ratios: list[tuple[float, float]] = field(default_factory=list)
    sup: float = math.nan
    inf: float = math.nan
    expected: Fraction | None = None
    final_ratio: float = math.nan


def comparability_check(f: RationalCurve, g: RationalCurve, F: Family, V: Variety,
                        r_grid: Sequence[float], rtol: float = 0.05) -> ComparabilityReport:
    """Sup and inf of ``T_f/T_g`` on the grid; the last ratio should be near deg f / deg g."""
    if g.is_constant() or f.is_constant():
        return ComparabilityReport(VIOLATED, "constant curve: its characteristic vanishes")
    d = F.common_degree_d
    H = len(V.standard_monomials(d))
    for name, c in (("f", f), ("g", g)):
        _check_curve_on(V, c)
        nd = nondegeneracy(V, d, c)
        if not nd.ok:
            return ComparabilityReport(VIOLATED, f"{name} is degenerate: killed by {nd.killing_class.to_string()}")
    thr = smt_threshold(F.N, V.dim_k, H)
    if F.q <= thr:
        return ComparabilityReport(VIOLATED, f"q = {F.q} does not exceed {thr}")
    ratios = [(r, characteristic(f, r) / characteristic(g, r)) for r in r_grid]
    vals = [v for _, v in ratios]
    expected = Fraction(f.degree, g.degree)
    final = vals[-1]
    ok = abs(final - float(expected)) <= rtol * float(expected)
    rep = ComparabilityReport(PASS if ok else FAIL, "", ratios, max(vals), min(vals), expected, final)
    rep.message = (f"T_f/T_g in [{rep.inf:.6g}, {rep.sup:.6g}]; at r = {ratios[-1][0]:.6g} "
                   f"ratio {final:.6g} vs deg ratio {expected}")
    return rep


# -- unicity ------------------------------------------------------------------

def sigma(i: int, q: int, N: int) -> int:
    """Cyclic shift by ``N`` on ``1..q`` (1-based)."""
    if not 1 <= i <= q:
        raise ValueError(f"index {i} outside 1..{q}")
    return i + N if i + N <= q else i + N - q


def minors(f: RationalCurve, g: RationalCurve) -> dict[tuple[int, int], Poly]:
    fc, gc = f.components, g.components
    if len(fc) != len(gc):
        raise ValueError("curves live in different projective spaces")
    return {(s, t): fc[s] * gc[t] - fc[t] * gc[s]
            for s in range(len(fc)) for t in range(s + 1, len(fc))}


def curves_equal(f: RationalCurve, g: RationalCurve) -> bool:
    """Projective equality: every 2x2 minor vanishes identically."""
    return all(m.is_zero() for m in minors(f, g).values())


def ratio_groups(Pf: Sequence[Poly], Pg: Sequence[Poly]) -> list[list[int]]:
    """Classes of ``i ~ j`` iff ``Q_i(f) Q_j(g) == Q_j(f) Q_i(g)`` (0-based)."""
    q = len(Pf)
    parent = list(range(q))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(q):
        for j in range(i + 1, q):
            if find(i) != find(j) and (Pf[i] * Pg[j] - Pf[j] * Pg[i]).is_zero():
                parent[find(j)] = find(i)
    groups: dict[int, list[int]] = {}
    for i in range(q):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values(), key=lambda grp: (-len(grp), grp))


@dataclass
class HypothesisVerdict:
    holds: bool
    violations: list[str]


def hypothesis_i(Pf: Sequence[Poly]) -> HypothesisVerdict:
    """Distinct members have no common zero along ``f`` (pairwise constant gcd)."""
    bad = []
    for i in range(len(Pf)):
        for j in range(i + 1, len(Pf)):
            g = gcd_univariate(Pf[i], Pf[j])
            if g.degree() > 0:
                bad.append(f"Q{i + 1}(f), Q{j + 1}(f) share the zeros of {g.to_string()}")
    return HypothesisVerdict(not bad, bad)


def hypothesis_ii(f: RationalCurve, g: RationalCurve, Pf: Sequence[Poly], Pg: Sequence[Poly]) -> HypothesisVerdict:
    """``f = g`` on every zero of every ``Q_i(f)`` and ``Q_i(g)``, decided by divisibility."""
    ms = [m for m in minors(f, g).values() if not m.is_zero()]
    bad = []
    for label, pulls in (("f", Pf), ("g", Pg)):
        for i, p in enumerate(pulls):
            if p.degree() <= 0:
                continue
            for fac, _ in squarefree_decompose(p):
                for m in ms:
                    if not divides(fac, m):
                        # the zeros that miss the minor are those of fac / gcd(fac, m)
                        miss = exact_div(fac, gcd_univariate(fac, m)).monic()
                        bad.append(f"zeros of {miss.to_string()} (from Q{i + 1}({label})) "
                                   f"are not zeros of the minor {m.to_string()}")
                        break
    return HypothesisVerdict(not bad, bad)


@dataclass
class PAudit:
    i: int
    sigma_i: int
    P: Poly
    pointwise_ok: bool | None
    failures: list[str] = field(default_factory=list)
    rows: list[tuple[float, float, float, float, bool]] = field(default_factory=list)


def _nu(b: Poly, p: Poly) -> int:
    return multiplicity(b, p) if not p.is_zero() and divides(b, p) else 0


def build_P(i: int, f: RationalCurve, g: RationalCurve, F: Family,
            r_grid: Sequence[float] = ()) -> tuple[Poly, PAudit]:
    """``P_i = Q_i(f) Q_s(g) - Q_i(g) Q_s(f)`` with ``s = sigma(i)`` (1-based),
    plus the divisor lower bound at every exact zero and the integrated
    sandwich ``lower(r) <= N_{P_i}(r) <= d (T_f + T_g) + C`` on ``r_grid``.
    """
    q, N = F.q, F.N
    s = sigma(i, q, N)
    d = F.common_degree_d
    H = len(F.variety.standard_monomials(d))
    lifted = F.lifted_polys()
    Pf = [pull(Q, f) for Q in lifted]
    Pg = [pull(Q, g) for Q in lifted]
    a, b = i - 1, s - 1
    P = Pf[a] * Pg[b] - Pg[a] * Pf[b]
    audit = PAudit(i, s, P, None)
    if P.is_zero():
        return P, audit
    for fac in coprime_basis(Pf + Pg + [P]):
        nf = [_nu(fac, p) for p in Pf]
        ng = [_nu(fac, p) for p in Pg]
        if not any(nf) and not any(ng):
            continue
        lower = min(nf[a], ng[a]) + min(nf[b], ng[b]) + sum(min(nf[j], 1) for j in range(q) if j not in (a, b))
        have = _nu(fac, P)
        if have < lower:
            audit.failures.append(f"at zeros of {fac.to_string()}: nu_P = {have} < {lower}")
    audit.pointwise_ok = not audit.failures
    if r_grid:
        Df = [zero_divisor(p) for p in Pf]
        Dg = [zero_divisor(p) for p in Pg]
        DP = zero_divisor(P)
        bQ = beta(lifted[a]) * beta(lifted[b]) * 2
        C = (math.log(float(bQ)) + d * (log_norm_mean(f, 1.0) + log_norm_mean(g, 1.0))
             - mean_log_abs_closed(P, 1.0, DP))
        M = H - 1
        for r in r_grid:
            nP = counting(DP, r)
            low = sum(counting(Df[j], r, M) + counting(Dg[j], r, M) - M * counting(Df[j], r, 1) for j in {a, b})
            low += sum(counting(Df[j], r, 1) for j in range(q) if j not in (a, b))
            up = d * (characteristic(f, r) + characteristic(g, r)) + C
            audit.rows.append((r, low, nP, up, low <= nP + _tol(nP) and nP <= up + _tol(up)))
    return P, audit


@dataclass
class UnicityReport:
    mode: str
    status: str
    message: str
    hyp_i: HypothesisVerdict | None = None
    hyp_ii: HypothesisVerdict | None = None
    gate: Fraction | None = None
    gate_ok: bool = False
    f_equals_g: bool = False
    groups: list[list[int]] = field(default_factory=list)
    conclusion: bool = False
    audit: list[tuple] = field(default_factory=list)
    p_audits: list[PAudit] = field(default_factory=list)


def unicity_check(f: RationalCurve, g: RationalCurve, F: Family, V: Variety, mode: str,
                  r_grid: Sequence[float] = ()) -> UnicityReport:
    """Verify the hypotheses of the unicity theorem exactly and test its conclusion.

    Mode ``a`` concludes ``f = g`` when ``q > 2(H-1)/d + (2N-k+1)H/(k+1)``; mode
    ``b`` concludes that some ``N+1`` ratios ``Q_i(f)/Q_i(g)`` coincide when
    ``q > 2(2N-k+1)H/(k+1)``.
    """
    if mode not in ("a", "b"):
        raise ValueError(f"mode must be 'a' or 'b', got {mode!r}")
    d, k, N, q = F.common_degree_d, V.dim_k, F.N, F.q
    H = len(V.standard_monomials(d))
    report = UnicityReport(mode, PASS, "")
    for name, c in (("f", f), ("g", g)):
        _check_curve_on(V, c)
        nd = nondegeneracy(V, d, c)
        if not nd.ok:
            report.status = VIOLATED
            report.message = f"{name} is degenerate: killed by {nd.killing_class.to_string()}"
            return report
    status, msg, _ = _position_verdict(F)
    if status != PASS:
        report.status, report.message = status, msg
        return report
    lifted = F.lifted_polys()
    Pf = [pull(Q, f) for Q in lifted]
    Pg = [pull(Q, g) for Q in lifted]
    report.hyp_i = hypothesis_i(Pf)
    report.hyp_ii = hypothesis_ii(f, g, Pf, Pg)
    report.f_equals_g = curves_equal(f, g)
    thr = smt_threshold(N, k, H)
    report.gate = Fraction(2 * (H - 1), d) + thr if mode == "a" else 2 * thr
    report.gate_ok = q > report.gate
    report.groups = ratio_groups(Pf, Pg)
    if mode == "a":
        report.conclusion = report.f_equals_g
        if not report.f_equals_g:
            report.audit = _audit_a(f, g, Pf, Pg, r_grid)
    else:
        report.conclusion = len(report.groups[0]) >= N + 1
        if not report.conclusion:
            report.p_audits = [build_P(i, f, g, F, r_grid)[1] for i in range(1, q + 1)]
    hyps = report.hyp_i.holds and report.hyp_ii.holds
    if not report.gate_ok:
        report.status = VIOLATED
        report.message = f"q = {q} does not exceed {report.gate}"
    elif not hyps:
        report.status = VIOLATED
        first = (report.hyp_i.violations + report.hyp_ii.violations)[0]
        report.message = f"hypothesis fails: {first}"
    elif report.conclusion:
        report.message = "f = g" if mode == "a" else f"ratio group of size {len(report.groups[0])}"
    else:
        report.status = FAIL
        report.message = "hypotheses hold but the conclusion fails"
    return report


def _audit_a(f: RationalCurve, g: RationalCurve, Pf: Sequence[Poly], Pg: Sequence[Poly],
             r_grid: Sequence[float]) -> list[tuple]:
    """Rows ``(r, N_H, sum N1 f, sum N1 g, T_f + T_g + C, ok_52, ok_53)``."""
    Hm = next(m for m in minors(f, g).values() if not m.is_zero())
    DH = zero_divisor(Hm)
    Df = [zero_divisor(p) for p in Pf if p.degree() > 0]
    Dg = [zero_divisor(p) for p in Pg if p.degree() > 0]
    C = log_norm_mean(f, 1.0) + log_norm_mean(g, 1.0) - mean_log_abs_closed(Hm, 1.0, DH)
    rows = []
    for r in r_grid:
        nH = counting(DH, r)
        sf = sum(counting(D, r, 1) for D in Df)
        sg = sum(counting(D, r, 1) for D in Dg)
        TT = characteristic(f, r) + characteristic(g, r)
        rows.append((r, nH, sf, sg, TT + C, nH >= sf - _tol(sf), nH <= TT + C + _tol(nH)))
    return rows


# -- linear-span corollary ----------------------------------------------------

def _coefficient_matrix(f: RationalCurve) -> list[list[Fraction]]:
    deg = max(c.degree() for c in f.components)
    return [[c.coeff((j,)) for j in range(deg + 1)] for c in f.components]


def span_dimension(f: RationalCurve) -> int:
    """Dimension of the smallest linear subspace containing the image."""
    return linalg.rank(_coefficient_matrix(f)) - 1


def span_variety(f: RationalCurve) -> Variety:
    """The linear span of ``f`` as a variety cut out by linear forms."""
    n = f.n
    forms = [sum((Poly.var(i, n + 1) * c for i, c in enumerate(vec)), Poly.zero(n + 1))
             for vec in linalg.left_kernel(_coefficient_matrix(f))]
    return Variety(n, forms, span_dimension(f))


@dataclass
class CorollaryReport:
    status: str
    message: str
    k_f: int = -1
    k_g: int = -1
    gate: int = 0
    gate_ok: bool = False
    spans_equal: bool = False
    chain_failures: list[str] = field(default_factory=list)
    f_equals_g: bool = False
    unicity: UnicityReport | None = None


def corollary_demo(f: RationalCurve, g: RationalCurve, hyperplanes: Sequence[Poly],
                   r_grid: Sequence[float] = ()) -> CorollaryReport:
    """Linear-span version of unicity: hyperplanes in general position in P^n."""
    n = f.n
    if any(h.degree() != 1 or not h.is_homogeneous() for h in hyperplanes):
        raise ValueError("corollary needs linear forms")
    if f.is_constant() or g.is_constant():
        return CorollaryReport(VIOLATED, "constant curve (span dimension 0)")
    rep = CorollaryReport(PASS, "", span_dimension(f), span_dimension(g))
    rep.gate = 2 * (2 * n - rep.k_f + 1)
    rep.gate_ok = Fraction(len(hyperplanes)) > Fraction(rep.gate)
    Pn = Variety.projective_space(n)
    F = Family.from_polys(hyperplanes, n, Pn)
    status, msg, _ = _position_verdict(F)
    if status != PASS:
        rep.status, rep.message = status, msg
        return rep
    Vf, Vg = span_variety(f), span_variety(g)
    for src, V, other, name in ((f, Vf, g, "g"), (g, Vg, f, "f")):
        for form in V.generators:
            if not pull(form, other).is_zero():
                rep.chain_failures.append(f"{form.to_string()} vanishes on the span of "
                                          f"{'f' if name == 'g' else 'g'} but not along {name}")
    rep.spans_equal = not rep.chain_failures
    rep.f_equals_g = curves_equal(f, g)
    Pf = [pull(h, f) for h in hyperplanes]
    Pg = [pull(h, g) for h in hyperplanes]
    hyp_ii = hypothesis_ii(f, g, Pf, Pg)
    if not rep.gate_ok:
        rep.status, rep.message = VIOLATED, f"q = {len(hyperplanes)} does not exceed 2(2n-k+1) = {rep.gate}"
        return rep
    if not hyp_ii.holds:
        rep.status, rep.message = VIOLATED, f"hypothesis fails: {hyp_ii.violations[0]}"
        return rep
    if not rep.spans_equal:
        rep.status, rep.message = FAIL, f"spans differ: {rep.chain_failures[0]}"
        return rep
    # hyperplanes containing the span vanish along both curves; f = g follows directly there
    if any(p.is_zero() for p in Pf):
        rep.status = PASS if rep.f_equals_g else FAIL
        rep.message = "a hyperplane contains the span; f = g forced" if rep.f_equals_g else "f != g"
        return rep
    Fv = Family.from_polys(list(hyperplanes), n, Vf)
    rep.unicity = unicity_check(f, g, Fv, Vf, "b", r_grid)
    if rep.f_equals_g:
        rep.message = f"f = g (k = {rep.k_f}, q = {len(hyperplanes)} > {rep.gate})"
    else:
        rep.status, rep.message = FAIL, "hypotheses hold but f != g"
    return rep
