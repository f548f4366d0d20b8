"""Machine checks of the rho1/theta identity and the facts its proof uses.

Each check returns :class:`CheckResult` entries.  A failing entry carries a
witness: the nonzero difference between the two sides, so a drifting term
can be located.  Identity checks work on rational functions and never call
the exact-division path that the invariants themselves rely on.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import catalog
from .diagram import DiagramValidationError, UprightDiagram, kink_variants, validate
from .invariants import (
    GreenData,
    build_matrix,
    compute_all,
    f1_simplified,
    f1_term,
    f2_term,
    green,
    r1_term,
)
from .poly import (
    LaurentPoly1,
    NotDivisible,
    PolyError,
    RationalFunc1,
    Target,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    witness: str | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    diagram: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def extend(self, entries):
        self.checks.extend(entries)
        return self

    def sorted(self) -> "VerificationReport":
        return VerificationReport(self.diagram, sorted(self.checks, key=lambda c: c.name))

    def to_json(self) -> dict:
        return {"diagram": self.diagram, "checks": [c.to_json() for c in self.sorted().checks]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _entry(name: str, difference) -> CheckResult:
    """Pass iff ``difference`` is zero; otherwise keep it as the witness."""
    zero = difference == 0 if isinstance(difference, (int, Fraction)) else difference.is_zero()
    return CheckResult(name, zero, None if zero else str(difference))


def _tag(idx: int) -> str:
    return f"c{idx:03d}"


# -------------------------------------------------------------------- checks


def check_theorem(D: UprightDiagram, result=None, include_diagonal: bool = True) -> list[CheckResult]:
    r = result or compute_all(D, include_diagonal=include_diagonal)
    return [_entry("theorem", r.rho1 + r.theta.specialize())]


def check_normalization(D: UprightDiagram, result=None) -> list[CheckResult]:
    r = result or compute_all(D, ("delta",))
    return [_entry("normalization/delta_at_1", Fraction(r.delta.eval_at_one()) - 1)]


def check_palindromic(D: UprightDiagram, result=None) -> list[CheckResult]:
    r = result or compute_all(D, ("delta",))
    return [_entry("palindromic/delta", r.delta - r.delta.mirror())]


def check_unit_determinant(gd: GreenData) -> list[CheckResult]:
    v = gd.det.eval_at_one()
    return [CheckResult("unit/det_at_1", abs(v) == 1, None if abs(v) == 1 else str(v))]


def check_adjugate(D: UprightDiagram, gd: GreenData) -> list[CheckResult]:
    """``A * adj == det * I`` entrywise, as Laurent polynomials."""
    A = build_matrix(D)
    m = A.size
    rows = {r: A.row(r) for r in range(1, m + 1)}
    bad = []
    for r in range(1, m + 1):
        for b in range(1, m + 1):
            s = LaurentPoly1.zero()
            for c, p in rows[r].items():
                s = s + p * gd.adj(c, b)
            if r == b:
                s = s - gd.det
            if not s.is_zero():
                bad.append(f"({r},{b}): {s}")
    return [CheckResult("adjugate", not bad, "; ".join(bad[:5]) if bad else None)]


def check_green_identities(D: UprightDiagram, gd: GreenData) -> list[CheckResult]:
    """``g_jj - g_{j+1,j} = 1`` and ``g_{j,j+1} - (1 - T^s) g_ji - g_jj = 0`` per crossing."""
    g = gd.g
    T = LaurentPoly1.T()
    out = []
    for idx, c in enumerate(D.crossings, 1):
        s, i, j = c.sign, c.over, c.under
        out.append(_entry(f"green/{_tag(idx)}/AG_jj", g(j, j) - g(j + 1, j) - 1))
        out.append(_entry(f"green/{_tag(idx)}/GA_j_j+1", g(j, j + 1) - (1 - T ** s) * g(j, i) - g(j, j)))
    return out


def _specialized_green(gd: GreenData):
    """``G1 = G(1)`` as numbers and ``G2 = G3 = G(T)`` under ``T1 <- 1, T2 = T``."""
    g = gd.g
    cache = {}

    def g1(a, b):
        if (a, b) not in cache:
            cache[a, b] = g(a, b).substitute(Target.ONE)
        return cache[a, b]

    return g1, g


def check_per_crossing_f1(D: UprightDiagram, gd: GreenData) -> list[CheckResult]:
    """F1 under ``T1 <- 1, T2 <- T`` equals -R1 and the simplified form, per crossing."""
    g1, g = _specialized_green(gd)
    T = LaurentPoly1.T()
    out = []
    for idx, c in enumerate(D.crossings, 1):
        s, i, j = c.sign, c.over, c.under
        ts = RationalFunc1(T ** s)
        e1 = {"ii": g1(i, i), "ij": g1(i, j), "ji": g1(j, i), "jj": g1(j, j)}
        e2 = {"ii": g(i, i), "ij": g(i, j), "ji": g(j, i), "jj": g(j, j)}
        f1 = f1_term(s, e1, e2, e2, RationalFunc1(1), ts, ts)
        r1 = r1_term(s, g(i, i), g(i, j), g(j, i), g(j, j), g(j + 1, j), g(j, j + 1))
        simple = f1_simplified(s, g(i, i), g(i, j), g(j, i), g(j, j), ts)
        out.append(_entry(f"f1/{_tag(idx)}/f1_plus_r1", f1 + r1))
        out.append(_entry(f"f1/{_tag(idx)}/simplified", f1 - simple))
    return out


def check_f2_vanishes(D: UprightDiagram, gd: GreenData) -> list[CheckResult]:
    """Every F2 pair term vanishes under ``T1 <- 1``; one entry per crossing pair."""
    g1, g = _specialized_green(gd)
    T = LaurentPoly1.T()
    one = RationalFunc1(1)
    out = []
    for a, c0 in enumerate(D.crossings, 1):
        for b, c1 in enumerate(D.crossings, 1):
            s0, i0, j0 = c0.sign, c0.over, c0.under
            s1, i1, j1 = c1.sign, c1.over, c1.under
            term = f2_term(
                s0, s1, g1(j1, i0), g(j0, i1), g(i1, i0), g(j1, j0), g(j1, i0), g(i1, j0),
                one, RationalFunc1(T ** s0), RationalFunc1(T ** s1), RationalFunc1(T ** s1),
            )
            out.append(_entry(f"f2_vanishes/{_tag(a)}-{_tag(b)}", term))
    return out


def check_t3_coincidence(D: UprightDiagram, gd: GreenData) -> list[CheckResult]:
    """Diagonal entries of ``G2`` and ``G3`` agree once ``T1 <- 1``."""
    bad = []
    for k in range(1, gd.size + 1):
        g = gd.g(k, k)
        d = g.substitute(Target.T2).specialize() - g.substitute(Target.T1T2).specialize()
        if not d.is_zero():
            bad.append(f"g{k}{k}: {d}")
    return [CheckResult("t3_coincidence/diagonal", not bad, "; ".join(bad) if bad else None)]


def check_laurentness(D: UprightDiagram, gd: GreenData, include_diagonal: bool = True) -> list[CheckResult]:
    from .invariants import theta

    try:
        theta(D, gd, include_diagonal)
    except NotDivisible as exc:
        return [CheckResult("laurent/theta", False, f"NotDivisible: {exc}")]
    return [CheckResult("laurent/theta", True)]


def _invariants(D, include_diagonal=True):
    r = compute_all(D, include_diagonal=include_diagonal)
    return {"delta": r.delta, "rho1": r.rho1, "theta": r.theta}


def check_invariance(group, prefix: str = "invariance", include_diagonal: bool = True) -> list[CheckResult]:
    """Delta, rho1 and theta agree across ``group`` (pairs of (label, diagram))."""
    group = list(group)
    if len(group) < 2:
        return [CheckResult(f"{prefix}/vacuous", True)]
    ref_label, ref = group[0]
    try:
        base = _invariants(ref, include_diagonal)
    except (PolyError, ArithmeticError) as exc:
        return [CheckResult(f"{prefix}/reference", False, f"{ref_label}: {type(exc).__name__}: {exc}")]
    out = []
    for key in ("delta", "rho1", "theta"):
        bad = []
        for label, D in group[1:]:
            try:
                other = _invariants(D, include_diagonal)[key]
            except (PolyError, ArithmeticError) as exc:
                bad.append(f"{label}: {type(exc).__name__}")
                continue
            if other != base[key]:
                bad.append(f"{label}: {other - base[key]}")
        out.append(CheckResult(f"{prefix}/{key}", not bad, "; ".join(bad[:3]) if bad else None))
    return out


def kink_group(D: UprightDiagram):
    yield "original", D
    for (k, sign, chi), E in kink_variants(D):
        yield f"kink(edge={k},sign={sign:+d},{chi.value})", E


# ------------------------------------------------------------------- driver


def verify_diagram(
    D: UprightDiagram,
    name: str = "<diagram>",
    *,
    knot: str | None = None,
    kinks: bool = True,
    include_diagonal: bool = True,
    gd: GreenData | None = None,
) -> VerificationReport:
    """Run every check on one diagram.

    ``knot`` names a catalog knot the diagram claims to represent; its
    catalog projections are then compared against ``D``.  ``gd`` replaces
    the computed Green data in the identity checks (used by mutation tests).
    """
    report = VerificationReport(name)
    problems = validate(D)
    if problems:
        report.checks.append(CheckResult("valid", False, "; ".join(str(p) for p in problems)))
        return report.sorted()
    report.checks.append(CheckResult("valid", True))
    try:
        real = green(build_matrix(D))
    except (PolyError, ArithmeticError) as exc:
        report.checks.append(CheckResult("green", False, f"{type(exc).__name__}: {exc}"))
        return report.sorted()
    gd = gd or real
    try:
        result = compute_all(D, include_diagonal=include_diagonal)
    except NotDivisible as exc:
        report.checks.append(CheckResult("laurent/theta", False, f"NotDivisible: {exc}"))
        result = None
    except PolyError as exc:
        report.checks.append(CheckResult("compute", False, f"{type(exc).__name__}: {exc}"))
        return report.sorted()
    if result is not None:
        report.extend(check_theorem(D, result))
        report.extend(check_laurentness(D, real, include_diagonal))
        report.extend(check_normalization(D, result))
        report.extend(check_palindromic(D, result))
    report.extend(check_unit_determinant(gd))
    report.extend(check_adjugate(D, gd))
    report.extend(check_green_identities(D, gd))
    report.extend(check_per_crossing_f1(D, gd))
    report.extend(check_f2_vanishes(D, gd))
    report.extend(check_t3_coincidence(D, gd))
    if kinks:
        report.extend(check_invariance(kink_group(D), "invariance/kinks", include_diagonal))
    if knot is not None:
        group = [("self", D)] + [(f.name, f.diagram) for f in catalog.groups().get(knot, [])]
        report.extend(check_invariance(group, "invariance/catalog", include_diagonal))
    return report.sorted()


def verify_catalog(include_diagonal: bool = True, kinks: bool = True) -> list[VerificationReport]:
    return [
        verify_diagram(f.diagram, f.name, knot=f.knot, kinks=kinks, include_diagonal=include_diagonal)
        for f in catalog.CATALOG.values()
    ]


__all__ = [
    "CheckResult",
    "VerificationReport",
    "DiagramValidationError",
    "check_theorem",
    "check_normalization",
    "check_palindromic",
    "check_unit_determinant",
    "check_adjugate",
    "check_green_identities",
    "check_per_crossing_f1",
    "check_f2_vanishes",
    "check_t3_coincidence",
    "check_laurentness",
    "check_invariance",
    "kink_group",
    "verify_diagram",
    "verify_catalog",
]
