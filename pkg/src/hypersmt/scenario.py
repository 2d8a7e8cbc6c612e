"""Scenario files: YAML documents describing a variety, a family and curves."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

from .ideal import InhomogeneousError, Variety, hilbert_dimension_consistent, hilbert_function
from .nevanlinna import RationalCurve, make_grid, reduce_representation
from .poly import Poly, PolySyntaxError, parse
from .position import Family, Hypersurface, PositionError

CHECKS = ("hilbert", "position", "nochka", "wronskian", "smt", "claim", "jensen",
          "comparability", "unicity", "corollary", "logderiv")

DEFAULT_TOLERANCES = {
    "r0": 10.0,
    "doublings": 5,
    "comparability_rtol": 0.05,
    "jensen": 1e-6,
    "fmt": 1e-6,
    "select_draws": 200,
}


class ScenarioError(ValueError):
    """Invalid scenario; ``field`` names the offending entry."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass
class Scenario:
    id: str
    variety: Variety
    family: Family
    N: int
    f: RationalCurve
    g: RationalCurve | None
    r_grid: list[float]
    checks: list[str]
    seeds: dict[str, int] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)
    unicity_modes: list[str] = field(default_factory=lambda: ["a", "b"])
    expect: dict[str, str] = field(default_factory=dict)
    raw: dict[str, Any] = field(default_factory=dict, repr=False)

    @property
    def hypersurfaces(self) -> list[Hypersurface]:
        return self.family.members

    def hilbert(self, d: int | None = None) -> int:
        return hilbert_function(self.variety, d or self.family.common_degree_d)

    def seed(self, name: str) -> int:
        return int(self.seeds.get(name, 0))


def _need(doc: dict, key: str, where: str = "") -> Any:
    if key not in doc:
        raise ScenarioError(where + key, "missing required field")
    return doc[key]


def _poly(text: Any, names: list[str], where: str) -> Poly:
    if not isinstance(text, (str, int)):
        raise ScenarioError(where, f"expected a polynomial string, got {type(text).__name__}")
    try:
        return parse(str(text), names)
    except PolySyntaxError as exc:
        raise ScenarioError(where, str(exc)) from exc


def _curve(items: Any, where: str, nvars: int) -> RationalCurve:
    if not isinstance(items, list) or not items:
        raise ScenarioError(where, "expected a list of component strings")
    comps = [_poly(c, ["z"], f"{where}[{i}]") for i, c in enumerate(items)]
    if len(comps) != nvars:
        raise ScenarioError(where, f"{len(comps)} components for a variety in P^{nvars - 1}")
    try:
        return reduce_representation(comps)
    except ValueError as exc:
        raise ScenarioError(where, str(exc)) from exc


def scenario_from_dict(doc: dict, source: str = "<dict>") -> Scenario:
    if not isinstance(doc, dict):
        raise ScenarioError("<root>", "scenario must be a mapping")
    sid = str(_need(doc, "id"))
    vdoc = _need(doc, "variety")
    n = int(_need(vdoc, "ambient_n", "variety."))
    k = int(_need(vdoc, "dim_k", "variety."))
    names = [f"x{i}" for i in range(n + 1)]
    gens = [_poly(s, names, f"variety.generators[{i}]") for i, s in enumerate(vdoc.get("generators") or [])]
    for i, gpoly in enumerate(gens):
        if not gpoly.is_homogeneous():
            raise ScenarioError(f"variety.generators[{i}]", "generator not homogeneous")
    try:
        V = Variety(n, gens, k)
    except (InhomogeneousError, ValueError) as exc:
        raise ScenarioError("variety", str(exc)) from exc
    if not hilbert_dimension_consistent(V):
        raise ScenarioError("variety.dim_k", f"dimension {k} is inconsistent with the Hilbert function")

    members = []
    for i, h in enumerate(_need(doc, "hypersurfaces")):
        where = f"hypersurfaces[{i}]"
        if not isinstance(h, dict):
            raise ScenarioError(where, "expected {poly, degree}")
        p = _poly(_need(h, "poly", where + "."), names, where + ".poly")
        deg = int(h.get("degree", p.degree()))
        if not p.is_homogeneous():
            raise ScenarioError(where + ".poly", "hypersurface not homogeneous")
        if p.degree() != deg:
            raise ScenarioError(where + ".degree", f"declared {deg} but the polynomial has degree {p.degree()}")
        members.append(Hypersurface(p, deg))
    N = int(_need(doc, "N"))
    if N < k:
        raise ScenarioError("N", f"N = {N} is smaller than dim_k = {k}")
    try:
        F = Family(members, N, V)
    except PositionError as exc:
        raise ScenarioError("hypersurfaces", str(exc)) from exc

    cdoc = _need(doc, "curves")
    f = _curve(_need(cdoc, "f", "curves."), "curves.f", n + 1)
    g = _curve(cdoc["g"], "curves.g", n + 1) if cdoc.get("g") is not None else None
    for label, c in (("f", f), ("g", g)):
        if c is None:
            continue
        bad = V.contains_curve(list(c.components))
        if bad:
            raise ScenarioError(f"curves.{label}", f"curve not on V: generator {bad[0].to_string()} has nonzero pullback")

    gdoc = _need(doc, "r_grid")
    r_min, r_max = float(_need(gdoc, "r_min", "r_grid.")), float(_need(gdoc, "r_max", "r_grid."))
    points = int(gdoc.get("points", 20))
    spacing = gdoc.get("spacing", "log")
    if not r_min > 1:
        raise ScenarioError("r_grid.r_min", "r_min must exceed 1")
    if not r_max > r_min or points < 2 or not math.isfinite(r_max):
        raise ScenarioError("r_grid", "need r_max > r_min and at least 2 points")
    try:
        grid = make_grid(r_min, r_max, points, spacing)
    except ValueError as exc:
        raise ScenarioError("r_grid.spacing", str(exc)) from exc

    checks = list(doc.get("checks") or CHECKS)
    for c in checks:
        if c not in CHECKS:
            raise ScenarioError("checks", f"unknown check {c!r}")
    tolerances = dict(DEFAULT_TOLERANCES)
    tolerances.update(doc.get("tolerances") or {})
    modes = [str(m) for m in doc.get("unicity_modes", ["a", "b"])]
    if any(m not in ("a", "b") for m in modes):
        raise ScenarioError("unicity_modes", "modes are 'a' and 'b'")
    return Scenario(sid, V, F, N, f, g, grid, checks, dict(doc.get("seeds") or {}), tolerances,
                    modes, dict(doc.get("expect") or {}), doc)


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"scenario file not found: {path}")
    try:
        doc = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}" if mark is not None else "<file>"
        raise ScenarioError(where, f"malformed scenario file: {getattr(exc, 'problem', exc)}") from exc
    return scenario_from_dict(doc, str(path))


def shipped_scenarios() -> list[Path]:
    """Scenario files bundled with the package."""
    return sorted((Path(__file__).parent / "scenarios").glob("*.yaml"))
