"""Command-line runner for scenario files.

Exit codes: 0 all checks pass, 1 some check failed, 2 only hypothesis
violations, 3 an inconclusive check (and no failure).
"""

from __future__ import annotations

import argparse
import itertools
import math
import os
import random
import sys
import tempfile
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

from . import harness as hn
from . import linalg
from .ideal import hilbert_dimension_consistent, hilbert_function
from .nevanlinna import (
    GrowthTable,
    GuardGapError,
    QuadratureError,
    doubling_grid,
    jensen_check,
    logderiv_trend,
)
from .nochka import WeightError, select_R0, verify_weights
from .poly import Poly
from .position import (
    InconclusiveError,
    RetryBudgetExhausted,
    complete_basis,
    curve_points,
    full_rank_subsets,
    position_constants,
    rank_classes,
)
from .scenario import CHECKS, Scenario, ScenarioError, load_scenario
from .wronskian import (
    WronskianError,
    coefficient_rows,
    find_admissible,
    proportionality_constant,
    scaling_check,
)

PASS, FAIL, VIOLATED, INCONCLUSIVE = hn.PASS, hn.FAIL, hn.VIOLATED, hn.INCONCLUSIVE
_SEVERITY = {PASS: 0, VIOLATED: 1, INCONCLUSIVE: 2, FAIL: 3}


@dataclass
class CheckResult:
    status: str
    message: str
    lines: list[str] = field(default_factory=list)
    tables: dict[str, GrowthTable] = field(default_factory=dict)


@dataclass
class RunReport:
    scenario_id: str
    statuses: dict[str, str] = field(default_factory=dict)
    messages: dict[str, str] = field(default_factory=dict)
    artifacts: list[str] = field(default_factory=list)
    wall_time: float = 0.0
    details: dict[str, CheckResult] = field(default_factory=dict, repr=False)

    @property
    def exit_code(self) -> int:
        vals = set(self.statuses.values())
        if FAIL in vals:
            return 1
        if INCONCLUSIVE in vals:
            return 3
        if VIOLATED in vals:
            return 2
        return 0

    def text(self) -> str:
        out = [f"scenario: {self.scenario_id}"]
        for name, status in self.statuses.items():
            out.append(f"[{name}] {status}: {self.messages[name]}")
            out.extend("    " + line for line in self.details[name].lines)
        return "\n".join(out) + "\n"


def worst(statuses: Sequence[str]) -> str:
    return max(statuses, key=_SEVERITY.__getitem__, default=PASS)


# -- individual checks ----------------------------------------------------------

def _check_hilbert(sc: Scenario) -> CheckResult:
    V = sc.variety
    n, k = V.ambient_n, V.dim_k
    top = max(3, sc.family.common_degree_d + 1)
    lines, ok = [], hilbert_dimension_consistent(V)
    for d in range(1, top + 1):
        H = hilbert_function(V, d)
        bound = math.comb(n + d, n)
        prank = linalg.rank(coefficient_rows(hn.nondegeneracy(V, d, sc.f).pulled))
        lines.append(f"H_V({d}) = {H}  (bound {bound}, rank along f {prank})")
        ok = ok and H <= bound and prank <= H
    msg = f"dimension {k} consistent" if ok else "Hilbert function inconsistent"
    return CheckResult(PASS if ok else FAIL, msg, lines)


def _check_position(sc: Scenario) -> CheckResult:
    F, k = sc.family, sc.variety.dim_k
    status, msg, R = hn._position_verdict(F)
    if status != PASS:
        return CheckResult(status, msg)
    lines = []
    low = [R for R in itertools.combinations(range(F.q), F.N + 1) if rank_classes(R, F) < k + 1]
    if low:
        return CheckResult(FAIL, f"subset {low[0]} has rank below k+1")
    pts = curve_points(list(sc.f.components), 200, sc.seed("sample"))
    for R in itertools.islice(itertools.combinations(range(F.q), F.N + 1), 5):
        a, b = position_constants(R, F, pts)
        lines.append(f"subset {tuple(i + 1 for i in R)}: sampled constants in [{a:.6g}, {b:.6g}]")
    return CheckResult(PASS, f"{F.N}-subgeneral position certified", lines)


def _check_nochka(sc: Scenario) -> CheckResult:
    F = sc.family
    try:
        ws = hn.weights_for(F, sc.seed("subspace"))
    except WeightError as exc:
        return CheckResult(VIOLATED, str(exc))
    rep = verify_weights(ws)
    lines = [f"omega = ({', '.join(str(w) for w in ws.omegas)})", f"omega_tilde = {ws.omega_tilde}",
             f"subsets checked: {rep.subsets_checked}"]
    rng = random.Random(sc.seed("sample"))
    draws = int(sc.tolerances["select_draws"])
    for _ in range(draws):
        R = sorted(rng.sample(range(F.q), F.N + 1))
        E = [math.exp(rng.uniform(0, 5)) for _ in range(F.q)]
        select_R0(R, E, ws)
    lines.append(f"select_R0 audit: {draws} draws")
    if not rep.ok:
        return CheckResult(FAIL, f"property {rep.violations[0][0]} fails: {rep.violations[0][1]}", lines)
    return CheckResult(PASS, "weights verified exactly", lines)


def _check_wronskian(sc: Scenario) -> CheckResult:
    V, F, f = sc.variety, sc.family, sc.f
    d = F.common_degree_d
    H = hilbert_function(V, d)
    nd = hn.nondegeneracy(V, d, f)
    if not nd.ok:
        return CheckResult(VIOLATED, f"f is degenerate: killed by {nd.killing_class.to_string()}")
    A = find_admissible(nd.pulled, H - 1)
    W = hn.wronskian_det(nd.pulled, A)
    rng = random.Random(sc.seed("sample"))
    h = Poly.from_coeffs([rng.randint(-5, 5) for _ in range(3)] + [1])
    scaled = scaling_check(nd.pulled, h, A)
    lines = [f"admissible set {[a[0] for a in A.alphas]}", f"deg W = {W.degree()}",
             f"scaling identity with h = {h.to_string()}: {scaled}"]
    r0_sets = full_rank_subsets(F)
    T = complete_basis(F, r0_sets, seed=sc.seed("completion"))
    lifted = F.lifted_polys()
    Tf = [hn.pull(t, f) for t in T]
    consts = []
    for R0 in r0_sets:
        polys = [hn.pull(lifted[i], f) for i in R0] + Tf
        consts.append(proportionality_constant(polys, nd.pulled, A))
    lines.append(f"W_R0 = C W verified for {len(consts)} subsets")
    if W.is_zero() or not scaled:
        return CheckResult(FAIL, "Wronskian identity failed", lines)
    return CheckResult(PASS, "Wronskian nonzero; identities exact", lines)


def _check_smt(sc: Scenario) -> CheckResult:
    tol = sc.tolerances
    rep = hn.smt_check(sc.variety, sc.family, sc.f, sc.r_grid, r0=float(tol["r0"]),
                       doublings=int(tol["doublings"]), scenario_id=sc.id)
    lines = [f"q = {rep.q}, N = {rep.N}, k = {rep.k}, d = {rep.d}, H_V(d) = {rep.H}, coeff = {rep.coeff}"]
    if rep.killing_class is not None:
        lines.append(f"killing class: {rep.killing_class.to_string()}")
    for r, v in rep.trend:
        lines.append(f"trend r = {r:.12g}: margin/T_f = {v:.12g}")
    tables = {"smt": rep.table()} if rep.rows else {}
    return CheckResult(rep.status, rep.message, lines, tables)


def _check_claim(sc: Scenario) -> CheckResult:
    tol = sc.tolerances
    rep = hn.claim_check(sc.variety, sc.family, sc.f, r_grid=sc.r_grid, seed=sc.seed("subspace"),
                         r0=float(tol["r0"]), doublings=int(tol["doublings"]))
    lines = []
    for row in rep.rows:
        lines.append(f"zeros of {row.factor.to_string()}: nu = {list(row.nus)}, nu_W = {row.nu_W}, "
                     f"R1 = {[i + 1 for i in row.R1]}, {row.weighted} <= {row.r1_sum} <= {row.nu_W}: {row.ok}")
    for r, v in rep.diagnostic:
        lines.append(f"weighted diagnostic r = {r:.12g}: slack/T_f = {v:.12g}")
    tables = {}
    if rep.integrated:
        t = GrowthTable([r for r, _, _ in rep.integrated])
        t.add("claim_lhs", [a for _, a, _ in rep.integrated])
        t.add("claim_rhs", [b for _, _, b in rep.integrated])
        tables["claim"] = t
    return CheckResult(rep.status, rep.message, lines, tables)


def _check_jensen(sc: Scenario) -> CheckResult:
    limit = float(sc.tolerances["jensen"])
    polys = [(f"Q{i + 1}(f)", hn.pull(h.poly, sc.f), h.poly) for i, h in enumerate(sc.hypersurfaces)]
    lines, ok = [], True
    t = GrowthTable(list(sc.r_grid))
    for name, p, Q in polys:
        if p.is_zero():
            continue
        res = jensen_check(p, sc.r_grid)
        rows = hn.fmt_check(Q, sc.f, sc.r_grid)
        fmt_ok = all(row.ok for row in rows)
        ok = ok and res <= limit and fmt_ok
        t.add(f"fmt_{name}", [row.difference for row in rows])
        lines.append(f"{name}: Jensen residual {res:.3e}; N - d T <= {rows[0].bound:.6g}: {fmt_ok}")
    return CheckResult(PASS if ok else FAIL, "Jensen and first-main-theorem bounds hold" if ok
                       else "Jensen or first-main-theorem bound violated", lines, {"jensen": t})


def _need_g(sc: Scenario) -> None:
    if sc.g is None:
        raise ScenarioError("curves.g", "this check needs a second curve g")


def _check_comparability(sc: Scenario) -> CheckResult:
    _need_g(sc)
    rep = hn.comparability_check(sc.f, sc.g, sc.family, sc.variety, sc.r_grid,
                                 float(sc.tolerances["comparability_rtol"]))
    tables = {}
    if rep.ratios:
        t = GrowthTable([r for r, _ in rep.ratios])
        t.add("T_f_over_T_g", [v for _, v in rep.ratios])
        tables["comparability"] = t
    return CheckResult(rep.status, rep.message, [], tables)


def _check_unicity(sc: Scenario) -> CheckResult:
    _need_g(sc)
    statuses, lines, tables = [], [], {}
    for mode in sc.unicity_modes:
        rep = hn.unicity_check(sc.f, sc.g, sc.family, sc.variety, mode, sc.r_grid)
        statuses.append(rep.status)
        lines.append(f"mode {mode}: {rep.status}: {rep.message}")
        if rep.hyp_i is not None:
            lines.append(f"  (i) holds: {rep.hyp_i.holds}; (ii) holds: {rep.hyp_ii.holds}; "
                         f"gate q > {rep.gate}: {rep.gate_ok}")
            lines.extend("  " + v for v in rep.hyp_i.violations + rep.hyp_ii.violations)
            lines.append(f"  ratio groups: {[[i + 1 for i in grp] for grp in rep.groups]}")
        if rep.audit:
            t = GrowthTable([row[0] for row in rep.audit])
            t.add("N_H", [row[1] for row in rep.audit])
            t.add("sum_N1_f", [row[2] for row in rep.audit])
            t.add("sum_N1_g", [row[3] for row in rep.audit])
            t.add("T_sum_plus_C", [row[4] for row in rep.audit])
            tables[f"unicity_{mode}"] = t
        for pa in rep.p_audits:
            lines.append(f"  P_{pa.i} (sigma = {pa.sigma_i}): pointwise {pa.pointwise_ok}; "
                         f"sandwich {all(row[-1] for row in pa.rows)}")
    summary = "; ".join(line for line in lines if line.startswith("mode"))
    return CheckResult(worst(statuses), summary, lines, tables)


def _check_corollary(sc: Scenario) -> CheckResult:
    _need_g(sc)
    rep = hn.corollary_demo(sc.f, sc.g, [h.poly for h in sc.hypersurfaces], sc.r_grid)
    lines = [f"k(f) = {rep.k_f}, k(g) = {rep.k_g}, gate q > {rep.gate}: {rep.gate_ok}",
             f"spans equal: {rep.spans_equal}; f = g: {rep.f_equals_g}"]
    lines.extend(rep.chain_failures)
    return CheckResult(rep.status, rep.message, lines)


def _check_logderiv(sc: Scenario) -> CheckResult:
    r0 = float(sc.tolerances["r0"])
    radii = doubling_grid(r0, r0 * 2 ** int(sc.tolerances["doublings"]))
    t = GrowthTable(radii)
    lines, ok = [], True
    for j, p in enumerate(sc.f.components):
        if p.degree() <= 0:
            continue
        series = logderiv_trend(p, (1,), radii)
        t.add(f"f{j}", series)
        ok = ok and all(math.isfinite(x) for x in series) and series[-1] <= series[0] + 1e-12
        lines.append(f"f{j}: m(r, f'/f)/T from {series[0]:.6g} to {series[-1]:.6g}")
    return CheckResult(PASS if ok else FAIL, "ratios shrink along the doubling grid" if ok
                       else "ratio grows", lines, {"logderiv": t})


DISPATCH: dict[str, Callable[[Scenario], CheckResult]] = {
    "hilbert": _check_hilbert,
    "position": _check_position,
    "nochka": _check_nochka,
    "wronskian": _check_wronskian,
    "smt": _check_smt,
    "claim": _check_claim,
    "jensen": _check_jensen,
    "comparability": _check_comparability,
    "unicity": _check_unicity,
    "corollary": _check_corollary,
    "logderiv": _check_logderiv,
}
assert set(DISPATCH) == set(CHECKS)


def _with_seed(sc: Scenario, seed: int | None) -> Scenario:
    if seed is not None:
        sc.seeds = {name: seed for name in ("subspace", "completion", "sample")}
    return sc


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def run(sc: Scenario, checks: Sequence[str] | None = None, out_dir: str | Path | None = None,
        seed: int | None = None) -> RunReport:
    """Run ``checks`` (default: the scenario's list); write artifacts to ``out_dir``."""
    start = time.perf_counter()
    sc = _with_seed(sc, seed)
    checks = list(checks or sc.checks)
    report = RunReport(sc.id)
    for name in checks:
        if name not in DISPATCH:
            raise ValueError(f"unknown check {name!r}")
        try:
            res = DISPATCH[name](sc)
        except (InconclusiveError, GuardGapError, QuadratureError, RetryBudgetExhausted) as exc:
            res = CheckResult(INCONCLUSIVE, f"{type(exc).__name__}: {exc}")
        except (ValueError, ArithmeticError, AssertionError, WronskianError, WeightError) as exc:
            res = CheckResult(FAIL, f"{type(exc).__name__}: {exc}")
        report.statuses[name] = res.status
        report.messages[name] = res.message
        report.details[name] = res
    if out_dir is not None:
        base = Path(out_dir) / sc.id
        for name in checks:
            for tname, table in report.details[name].tables.items():
                path = base / f"{tname}.csv"
                _atomic_write(path, table.to_csv())
                report.artifacts.append(str(path))
        path = base / "report.txt"
        _atomic_write(path, report.text())
        report.artifacts.append(str(path))
    report.wall_time = time.perf_counter() - start
    return report


# -- entry point -----------------------------------------------------------------

def _cmd_run(args) -> int:
    sc = load_scenario(args.file)
    rep = run(sc, args.check or None, args.out, args.seed)
    sys.stdout.write(rep.text())
    for path in rep.artifacts:
        print(f"wrote {path}")
    print(f"wall time {rep.wall_time:.2f}s; exit {rep.exit_code}")
    return rep.exit_code


def _cmd_validate(args) -> int:
    sc = load_scenario(args.file)
    F = sc.family
    print(f"{sc.id}: valid; P^{sc.variety.ambient_n}, k = {sc.variety.dim_k}, q = {F.q}, "
          f"N = {F.N}, d = {F.common_degree_d}, H_V(d) = {sc.hilbert()}")
    return 0


def _cmd_list(args) -> int:
    for name in CHECKS:
        print(name)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hypersmt", description="Run scenario checks for truncated second main theorems.")
    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("run", help="run checks of a scenario file")
    p.add_argument("file")
    p.add_argument("--check", action="append", choices=CHECKS, metavar="NAME",
                   help="check to run (repeatable; default: the scenario's list)")
    p.add_argument("--out", default=None, help="directory for CSV and report artifacts")
    p.add_argument("--seed", type=int, default=None, help="override every scenario seed")
    p.set_defaults(func=_cmd_run)
    p = sub.add_parser("validate", help="parse and validate a scenario file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)
    p = sub.add_parser("list-checks", help="print the available check names")
    p.set_defaults(func=_cmd_list)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScenarioError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
