"""Adjunction-theoretic case analysis and row validation.

Each family of transformations is classified by running its constraint
pipeline over a finite candidate set and recording, for every candidate that
is pruned, the stage and the reason. Rows that come out of a pipeline are
matched against the embedded reference tables; any deviation raises
:class:`ClassificationMismatch` naming the stage.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from . import candidates as cand
from .candidates import CandidateSet, ci_compatible, ci_degree_options
from .store import cached
from .invariants import (
    DimensionPair,
    Intersections,
    Pluridegrees,
    Profile,
    as_int,
    castelnuovo_bound_p4,
    coindex_from_row,
    cubic_invariants,
    cubic_multidegree,
    delta_invariant,
    dimension_solve,
    hilbert_conditions,
    hilbert_consistent,
    hilbert_polynomial_solve,
    infer_inverse_base_dim,
    log_concave,
    pluridegrees_of,
    quartic_p5_image,
    quartic_p5_invariants,
    segre_multidegree,
    surface_p4_invariants,
)
from .tables import TableRow, classification_table

DERIVED = "derived-here"
REFERENCE = "reference"


class ClassificationMismatch(RuntimeError):
    def __init__(self, stage: str, expected: Any, got: Any):
        super().__init__(f"stage {stage!r}: expected {expected!r}, got {got!r}")
        self.stage = stage
        self.expected = expected
        self.got = got


# -- case systems ----------------------------------------------------------


@dataclass(frozen=True)
class Quantities:
    """Everything a case system may reference: intersections and pluridegrees."""

    x: Intersections
    pd: Pluridegrees

    @classmethod
    def of(cls, p: Profile, on_reduction: bool) -> Quantities:
        x = cubic_invariants(p)[0].intersections
        if on_reduction:
            x = x.blow_down(p.nu or 0)
        return cls(x, pluridegrees_of(x))


Expr = Callable[[Quantities], int]


@dataclass(frozen=True)
class CaseSystem:
    """Labelled polynomial equalities (``== 0``) and inequalities (``>= 0``)."""

    name: str
    equalities: tuple[tuple[str, Expr], ...]
    inequalities: tuple[tuple[str, Expr], ...] = ()
    on_reduction: bool = False

    def values(self, p: Profile) -> dict[str, int]:
        q = Quantities.of(p, self.on_reduction)
        return {label: f(q) for label, f in self.equalities + self.inequalities}

    def holds(self, p: Profile) -> bool:
        q = Quantities.of(p, self.on_reduction)
        return all(f(q) == 0 for _, f in self.equalities) and all(f(q) >= 0 for _, f in self.inequalities)


def _fixed(k: tuple[int, int, int, int]) -> tuple[tuple[str, Expr], ...]:
    kh2, k2h, k3, h3 = k
    return (
        ("KH2", lambda q: q.x.KH2 - kh2),
        ("K2H", lambda q: q.x.K2H - k2h),
        ("K3", lambda q: q.x.K3 - k3),
        ("H3", lambda q: q.x.H3 - h3),
    )


SCROLL_OVER_CURVE = CaseSystem("scroll-over-curve", (
    ("(K+3H)^3", lambda q: q.x.cube(1, 3)),
    ("(K+3H)^2H", lambda q: q.x.square_h(1, 3)),
))
DEL_PEZZO = CaseSystem("del-pezzo", (
    ("KH2+2H3", lambda q: q.x.KH2 + 2 * q.x.H3),
    ("K2H+2KH2", lambda q: q.x.K2H + 2 * q.x.KH2),
    ("K3+2K2H", lambda q: q.x.K3 + 2 * q.x.K2H),
))
QUADRIC_FIBRATION = CaseSystem("quadric-fibration", (
    ("(K+2H)^3", lambda q: q.x.cube(1, 2)),
    ("(K+2H)^2H", lambda q: q.x.square_h(1, 2)),
))
SCROLL_OVER_SURFACE = CaseSystem("scroll-over-surface", (
    ("(K+2H)^3", lambda q: q.x.cube(1, 2)),
))
NEF_BIG = CaseSystem("nef-big", (), (
    ("d1-1", lambda q: q.pd.d1 - 1),
    ("d2-1", lambda q: q.pd.d2 - 1),
    ("d3-1", lambda q: q.pd.d3 - 1),
    ("d1^2-d2d0", lambda q: q.pd.d1 ** 2 - q.pd.d2 * q.pd.d0),
), on_reduction=True)
P3_CUBIC = CaseSystem("p3-o3", _fixed((-36, 48, -64, 27)), on_reduction=True)
Q3_QUADRIC = CaseSystem("q3-o2", _fixed((-24, 36, -54, 16)), on_reduction=True)
VERONESE_FIBRATION = CaseSystem("veronese-fibration", (
    ("(2K+3H)^3", lambda q: q.x.cube(2, 3)),
    ("(2K+3H)^2H", lambda q: q.x.square_h(2, 3)),
), on_reduction=True)
MUKAI = CaseSystem("mukai", (
    ("K3+H3", lambda q: q.x.K3 + q.x.H3),
    ("K2H-H3", lambda q: q.x.K2H - q.x.H3),
    ("KH2+H3", lambda q: q.x.KH2 + q.x.H3),
), on_reduction=True)
DEL_PEZZO_FIBRATION = CaseSystem("del-pezzo-fibration", (
    ("d3", lambda q: q.pd.d3),
    ("d2", lambda q: q.pd.d2),
), (("d1-1", lambda q: q.pd.d1 - 1),), on_reduction=True)
CONIC_BUNDLE = CaseSystem("conic-bundle", (
    ("d3", lambda q: q.pd.d3),
), (
    ("d2-1", lambda q: q.pd.d2 - 1),
    ("d1^2-d2d0", lambda q: q.pd.d1 ** 2 - q.pd.d2 * q.pd.d0),
), on_reduction=True)

NOT_NEF_BIG_SYSTEMS = (P3_CUBIC, Q3_QUADRIC, VERONESE_FIBRATION, MUKAI, DEL_PEZZO_FIBRATION, CONIC_BUNDLE)


def solve_case_system(system: CaseSystem, candidates: CandidateSet) -> CandidateSet:
    kept = [p for p in candidates if system.holds(p)]
    return candidates.derive(system.name, kept, system.name)


# -- results ---------------------------------------------------------------


@dataclass
class StageRecord:
    stage: str
    input_size: int
    solutions: list[dict[str, int]]


@dataclass
class Rejection:
    stage: str
    candidate: dict[str, int]
    reason: str


@dataclass
class ClassificationRow:
    table_id: str
    profile: Profile
    r: int
    dims: DimensionPair
    structure: str
    provenance: str
    stage: str = ""
    delta: int | None = None
    multidegree: tuple[int, ...] | None = None
    extras: dict[str, int] = field(default_factory=dict)

    @property
    def table(self) -> str:
        return self.table_id.split(":", 1)[0]

    @property
    def line(self) -> str:
        return self.table_id.split(":", 1)[1]

    def numeric(self) -> tuple[int, ...]:
        p = self.profile
        return (self.r, p.n, p.d1, p.d, p.a, p.Delta, p.lam, p.g)


@dataclass
class ClassificationResult:
    family: str
    rows: list[ClassificationRow] = field(default_factory=list)
    stages: list[StageRecord] = field(default_factory=list)
    rejections: list[Rejection] = field(default_factory=list)
    notes: dict[str, int] = field(default_factory=dict)

    def stage(self, name: str) -> StageRecord:
        for s in self.stages:
            if s.stage == name:
                return s
        raise KeyError(name)


def _rec(p: Profile, with_nu: bool | None = None) -> dict[str, int]:
    out = {"lambda": p.lam, "g": p.g}
    if with_nu or (with_nu is None and p.nu is not None):
        out["nu"] = p.nu or 0
    out.update({"Delta": p.Delta, "d": p.d, "a": p.a})
    return out


def _record_stage(res: ClassificationResult, name: str, inp: Iterable[Profile],
                  sol: Iterable[Profile]) -> None:
    res.stages.append(StageRecord(name, len(list(inp)), [_rec(p) for p in sol]))


# -- stored data for the scroll-over-surface case --------------------------


@dataclass(frozen=True)
class ScrollBase:
    """Invariants of the base surface ``Y`` and the rank-2 bundle of a scroll ``P_Y(E)``."""

    chi: int
    KY2: int
    c1E2: int
    c2E: int

    @property
    def ruled(self) -> bool:
        # a ruled surface has chi(O_Y) = 1 - q <= 1, so chi >= 2 means non-ruled
        return self.chi <= 1


SCROLL_BASES = {
    (10, 6, 8, 2, 3): ScrollBase(chi=1, KY2=5, c1E2=20, c2E=10),
    (12, 11, 8, 2, 3): ScrollBase(chi=4, KY2=18, c1E2=29, c2E=17),
}


# -- the generic pipeline for three-dimensional base loci in P^6 -----------


@dataclass
class AdjunctionOutcome:
    scroll_over_surface: list[Profile] = field(default_factory=list)
    log_general: list[Profile] = field(default_factory=list)
    by_system: dict[str, list[Profile]] = field(default_factory=dict)
    gamma6: CandidateSet | None = None


def adjunction_pipeline(base: CandidateSet, res: ClassificationResult) -> AdjunctionOutcome:
    """Run every adjunction stage over ``base``, recording stages and rejections in ``res``."""
    out = AdjunctionOutcome()
    for system in (SCROLL_OVER_CURVE, DEL_PEZZO, QUADRIC_FIBRATION):
        sol = solve_case_system(system, base)
        _record_stage(res, system.name, base, sol)
        for p in sol:
            res.rejections.append(Rejection(system.name, _rec(p), f"unexpected {system.name} solution"))
    quad = set(solve_case_system(QUADRIC_FIBRATION, base))
    scroll = [p for p in solve_case_system(SCROLL_OVER_SURFACE, base) if p not in quad]
    _record_stage(res, SCROLL_OVER_SURFACE.name, base, scroll)
    for p in scroll:
        data = SCROLL_BASES.get(p.five())
        if data is not None and not data.ruled and data.c1E2 > 2 * p.g - 2:
            res.rejections.append(Rejection(
                SCROLL_OVER_SURFACE.name, _rec(p),
                f"base surface is non-ruled (chi={data.chi}) so c1(E)^2 <= 2g-2 is required, "
                f"but c1(E)^2={data.c1E2} > {2 * p.g - 2}",
            ))
        else:
            out.scroll_over_surface.append(p)

    resolved = set(quad) | set(scroll) | set(solve_case_system(DEL_PEZZO, base))
    rest = base.derive(base.name, (p for p in base if p not in resolved), "nef-big-exceptions")
    gamma6 = cand.enumerate_with_nu(rest)
    out.gamma6 = gamma6
    res.stages.append(StageRecord("nu-extension", len(rest), []))

    nef = solve_case_system(NEF_BIG, gamma6)
    _record_stage(res, NEF_BIG.name, gamma6, nef)
    for p in nef:
        x = cubic_invariants(p)[0].intersections.blow_down(p.nu or 0)
        pd = pluridegrees_of(x)
        first, second = pd.d1 ** 2 - pd.d2 * pd.d0, pd.d2 ** 2 - pd.d3 * pd.d1
        if first == 0 and second != 0:
            res.notes[f"d2^2-d3d1@{_key(p)}"] = second
            res.rejections.append(Rejection(
                NEF_BIG.name, _rec(p),
                f"pluridegrees {tuple(pd)} give d1^2-d2d0=0 but d2^2-d3d1={second}",
            ))
        else:
            out.log_general.append(p)

    nef_set = set(nef)
    not_nef = gamma6.derive("not-nef-big", (p for p in gamma6 if p not in nef_set), "not-nef-big")
    for system in NOT_NEF_BIG_SYSTEMS:
        sol = solve_case_system(system, not_nef)
        _record_stage(res, system.name, not_nef, sol)
        out.by_system[system.name] = list(sol)

    admitted = {p.five() for p in nef} | {p.five() for ps in out.by_system.values() for p in ps}
    for p in rest:
        if p.five() not in admitted:
            res.rejections.append(Rejection(
                "adjunction", _rec(p), "no value of nu survives any stage of the adjunction analysis"))
    return out


def _key(p: Profile) -> str:
    vals = (p.lam, p.g, p.nu or 0, p.Delta, p.d, p.a)
    return "(" + ",".join(map(str, vals)) + ")"


def _check(stage: str, expected: set[tuple[int, ...]], got: Iterable[tuple[int, ...]]) -> None:
    got = set(got)
    if got != expected:
        raise ClassificationMismatch(stage, sorted(expected), sorted(got))


def _match_table(table: str, numeric: tuple[int, ...], stage: str) -> TableRow:
    for row in classification_table(table):
        if row.numeric() == numeric:
            return row
    raise ClassificationMismatch(stage, f"a line of table {table}", numeric)


def _row(table: str, p: Profile, r: int, stage: str, provenance: str, **kw: Any) -> ClassificationRow:
    dims = _dims(p.n, r, p.d1, p.d)
    ref = _match_table(table, (r, p.n, p.d1, p.d, p.a, p.Delta, p.lam, p.g), stage)
    return ClassificationRow(ref.table_id, p, r, dims, ref.structure, provenance, stage, **kw)


def _dims(n: int, r: int, d1: int, d2: int) -> DimensionPair:
    rp, c = coindex_from_row(n, r, d1, d2)
    return DimensionPair(r, rp, c)


def _image_options(c: int) -> list[tuple[int, int]]:
    """``(a, Delta)`` for a factorial complete intersection of coindex ``c``."""
    if c == 0:
        return [(0, 1)]
    return [(a, D) for a in range(1, c + 1) for D in sorted(ci_degree_options(a, c))]


def _hilbert_lg(n: int, r: int, d1: int, d2: int, a: int) -> tuple[int, int] | None:
    rp, _ = coindex_from_row(n, r, d1, d2)
    hp = hilbert_polynomial_solve(hilbert_conditions(n, d1, d2, a, rp), r)
    if hp is None:
        return None
    lam, g = as_int(hp.degree), as_int(hp.sectional_genus)
    return None if lam is None or g is None else (lam, g)


def cubic_cone(jobs: int = 1) -> tuple[CandidateSet, CandidateSet, CandidateSet]:
    full, nd, lin = enumerate_base_cached(jobs)
    ci = cached("Gamma5_ci", nd.provenance + (cand.CI,), lambda: cand.ci_restriction(nd))
    return nd, lin, ci


def enumerate_base_cached(jobs: int = 1) -> tuple[CandidateSet, CandidateSet, CandidateSet]:
    box = (cand.CASTELNUOVO, cand.HODGE, cand.LIVORNI_SOMMESE)
    memo: dict[str, tuple[CandidateSet, CandidateSet, CandidateSet]] = {}

    def build(i: int) -> CandidateSet:
        if "all" not in memo:
            memo["all"] = cand.enumerate_base_set(jobs)
        return memo["all"][i]

    full = cached("Gamma5", box, lambda: build(0))
    nd = cached("Gamma5_d_ne_1", box + ("d!=1",), lambda: build(1))
    lin = cached("Gamma4_d_eq_1", box + ("d=1",), lambda: build(2))
    return full, nd, lin


# -- cubic transformations -------------------------------------------------

EXPECTED_CUBIC = {
    "scroll-over-curve": set(),
    "del-pezzo": set(),
    "quadric-fibration": set(),
    "scroll-over-surface": {(10, 6, 8, 2, 3), (12, 11, 8, 2, 3)},
    "nef-big": {(14, 15, 0, 1, 5, 0), (18, 28, 0, 3, 3, 1)},
    "p3-o3": set(),
    "q3-o2": set(),
    "veronese-fibration": set(),
    "mukai": {(11, 8, 3, 4, 3, 2)},
    "del-pezzo-fibration": {(12, 10, 0, 3, 3, 1), (12, 10, 1, 2, 4, 1)},
    "conic-bundle": {(13, 12, 0, 1, 5, 0)},
}


def _tuple_of(rec: dict[str, int]) -> tuple[int, ...]:
    return tuple(rec.values())


def classify_cubic(jobs: int = 1) -> ClassificationResult:
    """Type ``(3, d)`` with ``d > 1``: reference table 1."""
    res = ClassificationResult("cubic")

    # curves and surfaces: dimension relations plus the Hilbert conditions
    for row in cand.preliminary_classification():
        if row.d1 != 3 or row.r > 2:
            continue
        for a, Delta in _image_options(row.c):
            lg = _hilbert_lg(row.n, row.r, 3, row.d2, a)
            if lg is None:
                res.rejections.append(Rejection("hilbert", {"n": row.n, "r": row.r, "d": row.d2, "a": a},
                                                "Hilbert conditions have no integral solution"))
                continue
            p = Profile(lg[0], lg[1], Delta, row.d2, a, n=row.n, d1=3)
            # cubo-cubic curves and cubo-quadric surfaces are classical; the curve into a quadric is new
            prov = DERIVED if row.c > 0 else REFERENCE
            res.rows.append(_row("1", p, row.r, "hilbert", prov))

    nd, _, ci = cubic_cone(jobs)
    out = adjunction_pipeline(ci, res)
    for s in res.stages:
        if s.stage in EXPECTED_CUBIC:
            _check(s.stage, EXPECTED_CUBIC[s.stage], map(_tuple_of, s.solutions))

    for p in out.scroll_over_surface:
        res.rows.append(_cubic_row(p, "scroll-over-surface"))
    for p in out.log_general:
        res.rows.append(_cubic_row(p, "nef-big"))
    for system in ("mukai", "del-pezzo-fibration", "conic-bundle"):
        for p in out.by_system[system]:
            extras = {}
            if system == "del-pezzo-fibration":
                extras["fibre_degree"] = pluridegrees_of(
                    cubic_invariants(p)[0].intersections.blow_down(p.nu or 0)).d1
            res.rows.append(_cubic_row(p, system, extras))
    res.rows.sort(key=_row_order)
    return res


def _cubic_row(p: Profile, stage: str, extras: dict[str, int] | None = None) -> ClassificationRow:
    return _row("1", p, 3, stage, DERIVED, delta=delta_invariant(p),
                multidegree=cubic_multidegree(p), extras=extras or {})


_ROMAN = {s: i for i, s in enumerate(
    "I II III IV V VI VII VIII IX X XI XII XIII XIV XV".split(), start=1)}


def _row_order(row: ClassificationRow) -> tuple[str, int]:
    return (row.table, _ROMAN.get(row.line, 99))


# -- cubo-linear -----------------------------------------------------------

CUBO_LINEAR_PAIRS_C4 = {(5, 1), (8, 2), (9, 2), (12, 3), (16, 4)}


def classify_cubo_linear(jobs: int = 1) -> ClassificationResult:
    """Type ``(3, 1)``."""
    res = ClassificationResult("cubo-linear")
    for n, r, rp, c in cand.linear_inverse_dimensions(3):
        if rp > 1:
            continue
        for a, Delta in _image_options(c):
            lam, g = _hilbert_lg(n, r, 3, 1, a) or (None, None)
            if lam is None:
                continue
            p = Profile(lam, g, Delta, 1, a, n=n, d1=3)
            if (lam, g, Delta, a) == (6, 4, 3, 1):
                res.rejections.append(Rejection("hilbert", {"n": n, **_rec(p)}, (
                    "base locus is a complete intersection of a quadric and a cubic; the image is a cubic "
                    "with a double point whose singular locus equals the base locus of the inverse")))
                continue
            res.rows.append(_row("5", p, r, "hilbert", DERIVED))

    _, lin, _ = cubic_cone(jobs)
    (n, r, rp, c), = [x for x in cand.linear_inverse_dimensions(3) if x[2] > 1]
    pairs = {(D, a) for a, D in _image_options(c)}
    if pairs != CUBO_LINEAR_PAIRS_C4:
        raise ClassificationMismatch("cubo-linear-ci", sorted(CUBO_LINEAR_PAIRS_C4), sorted(pairs))
    six = lin.derive("cubo-linear", (p for p in lin if (p.Delta, p.a) in pairs), "ci-pairs")
    _record_stage(res, "ci-pairs", lin, six)
    _check("ci-pairs", {(15, 21, 16, 1, 4), (15, 20, 16, 1, 4), (14, 17, 16, 1, 4),
                        (13, 14, 16, 1, 4), (15, 19, 12, 1, 3), (18, 28, 9, 1, 2)},
           (p.five() for p in six))
    out = adjunction_pipeline(six, res)
    leftover = [ps for name, ps in out.by_system.items() if ps] + [out.scroll_over_surface]
    if any(leftover):
        raise ClassificationMismatch("cubo-linear-adjunction", [], leftover)
    for p in out.log_general:
        md = cubic_multidegree(p)
        inferred = infer_inverse_base_dim(md)
        res.notes[f"r_prime@{_key(p)}"] = inferred
        if inferred != rp:
            res.rejections.append(Rejection("inverse-base-dim", {**_rec(p), "r_prime": inferred},
                                            f"multidegree {md} gives r'={inferred}, but r'={rp} is required"))
        else:
            res.rows.append(_row("5", p, r, "nef-big", DERIVED, multidegree=md))
    res.rows.sort(key=_row_order)
    return res


# -- quartic transformations -----------------------------------------------

LAMBDA_SCAN = range(1, 65)  # bounded integer scan for the quadratic degree relations


def classify_quartic_p4() -> ClassificationResult:
    """Type ``(4, d)`` on ``P^4`` with ``d > 1``: reference table 4, lines I and II."""
    res = ClassificationResult("quartic-p4")
    roots: dict[str, list[int]] = {}
    for row in cand.preliminary_classification():
        if row.n != 4 or row.d1 != 4:
            continue
        for a, Delta in _image_options(row.c):
            if a == 0:
                # Cremona case: classical, taken from the reference table
                ref, = [t for t in classification_table("4") if (t.n, t.d1, t.a) == (4, 4, 0)]
                p = Profile(ref.lam, ref.g, 1, row.d2, 0, n=4, d1=4)
                res.rows.append(_row("4", p, row.r, "reference", REFERENCE))
                continue
            found = []
            for lam in LAMBDA_SCAN:
                inv = surface_p4_invariants(lam, a, 0)
                if inv.integral and inv.Delta_required == Delta:
                    found.append(lam)
            roots[f"d={row.d2},a={a},Delta={Delta}"] = found
            res.stages.append(StageRecord(f"roots d={row.d2} a={a} Delta={Delta}", len(LAMBDA_SCAN),
                                          [{"lambda": lam} for lam in found]))
            for lam in found:
                inv = surface_p4_invariants(lam, a, 0)
                p = Profile(lam, int(inv.g), Delta, row.d2, a, n=4, d1=4)
                if lam == 16:
                    res.rejections.append(Rejection("roots", _rec(p), (
                        "the base locus is cut out by quartics but is not a complete intersection")))
                    continue
                res.rows.append(_row("4", p, row.r, "roots", DERIVED, extras={
                    "K2": int(inv.K2), "chi": int(inv.chi), "c2": int(inv.c2)}))
    expected = {"d=3,a=1,Delta=2": [], "d=2,a=1,Delta=3": [9, 16], "d=2,a=2,Delta=4": []}
    if roots != expected:
        raise ClassificationMismatch("roots", expected, roots)
    res.rows.sort(key=_row_order)
    return res


def classify_quartic_p5() -> ClassificationResult:
    """Type ``(4, d)`` on ``P^5``: no ``d > 1``; one case with linear inverse."""
    res = ClassificationResult("quartic-p5")
    for row in cand.preliminary_classification():
        if row.n != 5 or row.d1 != 4:
            continue
        for a, Delta in _image_options(row.c):
            sols = [lam for lam in range(1, 16)
                    if quartic_p5_invariants(lam, row.d2, Delta, a).consistent]
            res.stages.append(StageRecord(f"d={row.d2} Delta={Delta} a={a}", 15, [{"lambda": x} for x in sols]))
            if not sols:
                res.rejections.append(Rejection("codim-surface", {"Delta": Delta, "d": row.d2, "a": a},
                                                "codimension and surface relations have no common integral solution"))

    (n, r, rp, c), = [x for x in cand.linear_inverse_dimensions(4) if x[0] == 5]
    cases = []
    for lam in range(1, 16):  # 16 - lambda >= 1
        Delta, a = (as_int(x) for x in quartic_p5_image(lam, 1))
        if Delta is None or a is None:
            continue
        inv = quartic_p5_invariants(lam, 1, Delta, a)
        if inv.g < 0:
            continue
        cases.append(inv)
    res.stages.append(StageRecord("cases", 15, [
        {"lambda": i.lam, "g": i.g, "Delta": i.Delta, "a": i.a} for i in cases]))
    for inv in cases:
        md = inv.multidegree_segre
        p = Profile(inv.lam, int(inv.g), int(inv.Delta), 1, int(inv.a), n=5, d1=4)
        cand_rec = {**_rec(p), "multidegree": list(md)}  # type: ignore[dict-item]
        if not ci_compatible(p.Delta, p.a, c):
            res.rejections.append(Rejection("complete-intersection", cand_rec,
                                            f"Delta={p.Delta} is not the degree of a complete intersection "
                                            f"of {p.a} hypersurfaces with coindex {c}"))
        elif infer_inverse_base_dim(md) != rp:
            res.rejections.append(Rejection("inverse-base-dim", cand_rec,
                                            f"multidegree gives r'={infer_inverse_base_dim(md)}, "
                                            f"but r'={rp} is required"))
        elif not log_concave(md):
            res.rejections.append(Rejection("hodge", cand_rec, "multidegree is not log-concave"))
        else:
            res.rows.append(_row("5", p, r, "cases", DERIVED, multidegree=tuple(int(x) for x in md)))
    return res


def classify_quarto_linear_p4() -> ClassificationResult:
    """Type ``(4, 1)`` on ``P^4``: reference table 5, line V."""
    res = ClassificationResult("quarto-linear-p4")
    (n, r, rp, c), = [x for x in cand.linear_inverse_dimensions(4) if x[0] == 4]
    for a, Delta in _image_options(c):
        for lam in LAMBDA_SCAN:
            inv = surface_p4_invariants(lam, a, 1)
            if not inv.integral or inv.Delta_required != Delta or inv.g < 0:
                continue
            md = segre_multidegree(4, 4, 2, lam, [inv.s2, inv.s1H])
            md = tuple(int(x) for x in md)
            p = Profile(lam, int(inv.g), Delta, 1, a, n=4, d1=4)
            rec = {**_rec(p), "multidegree": list(md)}  # type: ignore[dict-item]
            res.stages.append(StageRecord(f"a={a} Delta={Delta} lambda={lam}", 1, [rec]))
            if any(x < 1 for x in md):
                res.rejections.append(Rejection("multidegree", rec, "multidegree has a non-positive entry"))
            elif infer_inverse_base_dim(md) != rp:
                res.rejections.append(Rejection("inverse-base-dim", rec,
                                                f"multidegree gives r'={infer_inverse_base_dim(md)}, "
                                                f"but r'={rp} is required"))
            elif not log_concave(md):
                res.rejections.append(Rejection("hodge", rec, "multidegree is not log-concave"))
            else:
                res.rows.append(_row("5", p, r, "cases", DERIVED, multidegree=md,
                                     extras={"K2": int(inv.K2), "chi": int(inv.chi)}))
    return res


FAMILIES: dict[str, Callable[..., ClassificationResult]] = {
    "cubic": classify_cubic,
    "cubo-linear": classify_cubo_linear,
    "quartic-p4": classify_quartic_p4,
    "quartic-p5": classify_quartic_p5,
    "quarto-linear-p4": classify_quarto_linear_p4,
}


def classify(family: str, jobs: int = 1) -> ClassificationResult:
    fn = FAMILIES[family]
    return fn(jobs) if family in ("cubic", "cubo-linear") else fn()


# -- validation ------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    id: str
    passed: bool
    value: str


@dataclass
class ValidationReport:
    table_id: str
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def _row_fields(row: ClassificationRow | TableRow) -> tuple[str, int, int, int, int, int, int, int, int]:
    if isinstance(row, TableRow):
        return (row.table_id, row.r, row.n, row.d1, row.d2, row.a, row.Delta, row.lam, row.g)
    p = row.profile
    return (row.table_id, row.r, p.n, p.d1, p.d, p.a, p.Delta, p.lam, p.g)


def validate_row(row: ClassificationRow | TableRow, delta: int | None = None) -> ValidationReport:
    """Audit a row against every constraint that applies to its shape."""
    tid, r, n, d1, d2, a, Delta, lam, g = _row_fields(row)
    if delta is None and isinstance(row, ClassificationRow):
        delta = row.delta
    checks: list[Check] = []

    def add(cid: str, ok: bool, value: Any) -> None:
        checks.append(Check(cid, bool(ok), str(value)))

    rp, c = coindex_from_row(n, r, d1, d2)
    add("coindex", c >= 0, f"r'={rp} c={c}")
    dims = dimension_solve(n, d1, d2, c) if c >= 0 and d1 * d2 > 1 else None
    add("dimensions", dims is not None and (dims.r, dims.r_prime) == (r, rp), dims)
    if a == 0:
        add("complete-intersection", Delta == 1 and c == 0, f"a=0 Delta={Delta} c={c}")
    else:
        opts = sorted(ci_degree_options(a, c)) if c >= 0 else []
        add("complete-intersection", Delta in opts, f"Delta={Delta} options={opts}")
    add("hilbert", hilbert_consistent(hilbert_conditions(n, d1, d2, a, rp), r, lam, g), f"lambda={lam} g={g}")

    if (n, d1, r) == (6, 3, 3):
        p = Profile(lam, g, Delta, d2, a)
        md = cubic_multidegree(p)
        cd = cubic_invariants(p)[0]
        add("multidegree-positive", all(x > 0 for x in md), md)
        add("multidegree-type", md[1] == d1 and md[5] == Delta * d2 and md[6] == Delta, md)
        add("multidegree-segre", segre_multidegree(6, 3, 3, lam, cd.segre()) == md, md)
        add("hodge", cand.hodge_check(lam, g, Delta, d2), (lam, g, Delta, d2))
        add("livorni-sommese", cand.livorni_sommese_check(lam, g, Delta, d2, a, p.eps), (lam, g, Delta, d2, a))
        bound = castelnuovo_bound_p4(lam)
        add("castelnuovo", g <= bound, f"g={g} bound={bound}")
        dv = delta_invariant(p)
        add("delta-mod-6", dv % 6 in (0, 2), dv)
        if delta is not None:
            add("delta", dv == delta, f"computed={dv} stored={delta}")
        if d2 == 1:
            add("inverse-base-dim", infer_inverse_base_dim(md) == rp, infer_inverse_base_dim(md))
    elif (n, d1, r) == (4, 4, 2):
        inv = surface_p4_invariants(lam, a, 1 if d2 == 1 else 0)
        add("surface-p4", inv.integral and inv.g == g and inv.Delta_required == Delta,
            f"g={inv.g} Delta={inv.Delta_required}")
    elif (n, d1, r) == (5, 4, 3):
        inv = quartic_p5_invariants(lam, d2, Delta, a)
        md = inv.multidegree_segre
        add("quartic-p5", inv.consistent and inv.g == g and md == inv.multidegree_type,
            f"g={inv.g} residuals=({inv.codim_residual},{inv.surface_residual})")
        seg = segre_multidegree(5, 4, 3, lam, [inv.s3, inv.s2H, inv.s1H2])
        add("multidegree-segre", seg == md, md)
        add("multidegree-hodge", log_concave(md), md)
        if d2 == 1:
            add("inverse-base-dim", infer_inverse_base_dim(md) == rp, infer_inverse_base_dim(md))
    return ValidationReport(tid, checks)


def validate_table(table: str) -> list[ValidationReport]:
    return [validate_row(row) for row in classification_table(table)]


def matches_reference(rows: Sequence[ClassificationRow]) -> list[str]:
    """Differences between emitted rows and the reference table lines they claim."""
    diffs = []
    for row in rows:
        ref = _match_or_none(row.table, row.line)
        if ref is None:
            diffs.append(f"{row.table_id}: no such reference line")
        elif ref.numeric() != row.numeric() or ref.structure != row.structure:
            diffs.append(f"{row.table_id}: emitted {row.numeric()} != reference {ref.numeric()}")
    return diffs


def _match_or_none(table: str, line: str) -> TableRow | None:
    for row in classification_table(table):
        if row.line == line:
            return row
    return None


# -- audit of intermediate reference values --------------------------------


@dataclass(frozen=True)
class AuditItem:
    id: str
    expected: str
    computed: str
    informational: bool = False

    @property
    def status(self) -> str:
        if self.informational:
            return "info"
        return "pass" if self.expected == self.computed else "fail"


def _span(cs: CandidateSet, attr: str) -> str:
    lo, hi = cs.field_range(attr)
    return f"{lo}..{hi}"


def gamma6(jobs: int = 1) -> CandidateSet:
    """Six-tuples left once the scroll, del Pezzo and quadric-fibration cases are removed."""
    out = adjunction_pipeline(cubic_cone(jobs)[2], ClassificationResult("gamma6"))
    assert out.gamma6 is not None
    return out.gamma6


def reference_audit(jobs: int = 1) -> list[AuditItem]:
    """Intermediate counts and ranges of the cubic analysis next to their reference values.

    The reference ``d2^2 - d3 d1`` value for the rejected nef-and-big tuple
    disagrees with exact arithmetic; it is reported but never fails the audit.
    """
    full, nd, lin = enumerate_base_cached(jobs)
    _, _, ci = cubic_cone(jobs)
    g6 = gamma6(jobs)
    x = cubic_invariants(Profile(18, 28, 3, 3, 1, nu=0))[0].intersections.blow_down(0)
    pd = pluridegrees_of(x)
    items = [
        AuditItem("gamma5-size", "3619", str(len(full))),
        AuditItem("gamma5-d-ne-1-size", "2480", str(len(nd))),
        AuditItem("gamma4-d-eq-1-size", "1139", str(len(lin))),
        AuditItem("gamma5-ci-size", "174", str(len(ci))),
        AuditItem("gamma5-ci-lambda", "7..18", _span(ci, "lam")),
        AuditItem("gamma5-ci-g", "0..28", _span(ci, "g")),
        AuditItem("gamma6-size", "4237", str(len(g6))),
        AuditItem("gamma6-lambda", "11..18", _span(g6, "lam")),
        AuditItem("gamma6-g", "7..28", _span(g6, "g")),
        AuditItem("gamma6-nu", "0..181", _span(g6, "nu")),
        AuditItem("d2^2-d3d1@(18,28,0,3,3,1)", "1521", str(pd.d2 ** 2 - pd.d3 * pd.d1), informational=True),
    ]
    return items
