"""Finite candidate sets cut out by the numerical constraint systems.

The cubic case (``P^6`` with defining cubics, three-dimensional base locus)
reduces to a bounded box in ``(lambda, g, Delta, d, a)``. Every tuple of the
box is tested exactly against the Hodge and Livorni-Sommese inequalities; the
survivors are then narrowed by the complete-intersection rule and extended by
the number ``nu`` of exceptional planes allowed by the 4-secant line count.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Callable, Iterable, NamedTuple

from .invariants import (
    Profile,
    castelnuovo_bound_p4,
    cubic_invariants,
    le_barz_bound,
    pluridegrees,
)

FIVE_FIELDS = ("lambda", "g", "Delta", "d", "a")
SIX_FIELDS = ("lambda", "g", "nu", "Delta", "d", "a")
FOUR_FIELDS = ("lambda", "g", "Delta", "a")

# identifiers recorded in provenance lists
HODGE = "hodge"
LIVORNI_SOMMESE = "livorni-sommese"
CASTELNUOVO = "castelnuovo"
CI = "complete-intersection"
LE_BARZ = "le-barz"


@dataclass(frozen=True)
class CandidateSet:
    """A canonically ordered, duplicate-free set of profiles."""

    name: str
    tuples: tuple[Profile, ...]
    provenance: tuple[str, ...] = ()
    fields: tuple[str, ...] = FIVE_FIELDS

    def __post_init__(self) -> None:
        ordered = tuple(sorted(set(self.tuples), key=Profile.key))
        object.__setattr__(self, "tuples", ordered)
        object.__setattr__(self, "provenance", tuple(self.provenance))
        object.__setattr__(self, "fields", tuple(self.fields))
        object.__setattr__(self, "_members", frozenset(ordered))

    def __len__(self) -> int:
        return len(self.tuples)

    def __iter__(self):
        return iter(self.tuples)

    def __contains__(self, p: object) -> bool:
        return p in self._members  # type: ignore[attr-defined]

    def records(self) -> list[tuple[int, ...]]:
        return [record_of(p, self.fields) for p in self.tuples]

    def derive(self, name: str, tuples: Iterable[Profile], step: str,
               fields: tuple[str, ...] | None = None) -> CandidateSet:
        return CandidateSet(name, tuple(tuples), self.provenance + (step,), fields or self.fields)

    def field_range(self, attr: str) -> tuple[int, int]:
        vals = [getattr(p, attr) or 0 for p in self.tuples]
        return min(vals), max(vals)


_ATTR = {"lambda": "lam", "g": "g", "nu": "nu", "Delta": "Delta", "d": "d", "a": "a"}


def record_of(p: Profile, fields: tuple[str, ...]) -> tuple[int, ...]:
    return tuple(getattr(p, _ATTR[f]) for f in fields)


def profile_from_record(values: Iterable[int], fields: tuple[str, ...]) -> Profile:
    kw = {_ATTR[f]: v for f, v in zip(fields, values)}
    kw.setdefault("d", 1)  # projected 4-tuples carry a linear inverse
    return Profile(lam=kw["lam"], g=kw["g"], Delta=kw["Delta"], d=kw["d"], a=kw["a"], nu=kw.get("nu"))


# -- inequality systems ----------------------------------------------------


def hodge_check(lam: int, g: int, Delta: int, d: int) -> bool:
    Dd = Delta * d
    return (
        2 * lam - g + 1 >= 0
        and -21 * lam + 6 * g - Dd + 237 >= 0
        and lam * lam + 9 * lam - 18 * g + 18 >= 0
        and 49 * lam * lam - 28 * lam * g + 4 * g * g + (Dd - 1106) * lam + 316 * g - 27 * Dd + 6241 >= 0
        and 7 * Delta * lam - 2 * Delta * g + Dd * Dd - 79 * Delta >= 0
    )


def livorni_sommese_check(lam: int, g: int, Delta: int, d: int, a: int, eps: int) -> bool:
    Dd = Delta * d
    return (
        lam * lam + 7 * lam - 10 * g - 2 * Dd + 12 * a - 12 * eps - 92 >= 0
        and -10 * lam + 8 * g + 2 * Dd - 12 * a + 12 * eps + 94 >= 0
        and -290 * lam + 140 * g - 13 * Dd + Delta + 2290 >= 0
        and -147 * lam + 74 * g + 12 * Dd - Delta - 84 * a + 108 * eps + 1183 >= 0
    )


def le_barz_max_nu(lam: int, g: int, Delta: int, d: int, a: int, eps: int = 0) -> int:
    """Largest admissible ``nu``; negative when no value is admissible.

    The bound only sees the surface section, where ``a`` enters through
    ``a - eps``; pass ``eps = 1`` for a linear inverse.
    """
    return math.floor(le_barz_bound(lam, g, Delta, d, a - eps))


def reduction_check(p: Profile) -> bool:
    """The four inequalities forced when ``K_R + H_R`` is nef and big, in closed form."""
    lam, g, nu, D, Dd, a = p.lam, p.g, p.nu or 0, p.Delta, p.Dd, p.a
    return (
        -lam + 2 * g - nu - 3 >= 0
        and Dd - 42 * lam + 18 * g + nu - 12 * a + 326 >= 0
        and lam * lam - 199 * lam + 62 * g - nu - D - 48 * a + 1674 >= 0
        and (-lam * Dd - nu * Dd + 43 * lam * lam - 22 * lam * g + 4 * g * g + 43 * lam * nu
             - 22 * g * nu + 12 * lam * a + 12 * nu * a - 323 * lam - 8 * g - 323 * nu + 4) >= 0
    )


def reduction_values(p: Profile) -> tuple[int, int, int, int]:
    """``(d1 - 1, d2 - 1, d3 - 1, d1^2 - d2 d0)`` on the reduction, via pluridegrees."""
    pd = pluridegrees(cubic_invariants(p)[0], p.nu or 0)
    return (pd.d1 - 1, pd.d2 - 1, pd.d3 - 1, pd.d1 ** 2 - pd.d2 * pd.d0)


def nef_big_check(p: Profile) -> bool:
    """Same condition as :func:`reduction_check`, evaluated through pluridegrees (handles ``eps``)."""
    return all(v >= 0 for v in reduction_values(p))


# -- the base box ----------------------------------------------------------


def _a_range(lam: int, g: int, Delta: int, d: int, eps: int) -> range:
    """Values of ``a`` compatible with the Livorni-Sommese inequalities.

    The first inequality bounds ``12 a`` from below, the second and fourth
    from above; the third does not involve ``a``.
    """
    Dd = Delta * d
    lo = -(lam * lam + 7 * lam - 10 * g - 2 * Dd - 12 * eps - 92)
    hi2 = -10 * lam + 8 * g + 2 * Dd + 12 * eps + 94
    hi4 = -147 * lam + 74 * g + 12 * Dd - Delta + 108 * eps + 1183
    a_lo = max(1, -(-lo // 12))
    a_hi = min(hi2 // 12, hi4 // 84)
    return range(a_lo, a_hi + 1)


def _slice(lam: int) -> list[tuple[int, int, int, int, int]]:
    out = []
    g_max = math.floor(castelnuovo_bound_p4(lam))
    for g in range(0, g_max + 1):
        # second Hodge inequality: Delta*d <= 237 - 21 lambda + 6 g
        dd_max = 237 - 21 * lam + 6 * g
        for d in range(1, 6):
            eps = 1 if d == 1 else 0
            if d == 5:
                pairs = [(1, range(0, 1))]
            elif d == 4:
                pairs = [(2, range(1, 2))]
            else:
                pairs = [(D, None) for D in range(3, dd_max // d + 1)]
            for Delta, arange in pairs:
                if not hodge_check(lam, g, Delta, d):
                    continue
                for a in arange if arange is not None else _a_range(lam, g, Delta, d, eps):
                    if livorni_sommese_check(lam, g, Delta, d, a, eps):
                        out.append((lam, g, Delta, d, a))
    return out


LAMBDA_RANGE = range(3, 28)


def enumerate_base_set(jobs: int = 1) -> tuple[CandidateSet, CandidateSet, CandidateSet]:
    """All admissible ``(lambda, g, Delta, d, a)``.

    Returns the full set, its part with ``d != 1``, and the ``d = 1`` part
    projected to ``(lambda, g, Delta, a)``. With ``jobs > 1`` the lambda
    slices are enumerated in worker processes; the result is identical.
    """
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            slices = list(ex.map(_slice, LAMBDA_RANGE))
    else:
        slices = [_slice(lam) for lam in LAMBDA_RANGE]
    profiles = [Profile(l, g, D, d, a) for s in slices for (l, g, D, d, a) in s]
    prov = (CASTELNUOVO, HODGE, LIVORNI_SOMMESE)
    full = CandidateSet(f"Gamma5_{len(profiles)}", tuple(profiles), prov)
    nd = [p for p in profiles if p.d != 1]
    d_ne_1 = CandidateSet(f"Gamma5_{len(nd)}", tuple(nd), prov + ("d!=1",))
    lin = [p for p in profiles if p.d == 1]
    d_eq_1 = CandidateSet(f"Gamma4_{len(lin)}", tuple(lin), prov + ("d=1",), FOUR_FIELDS)
    return full, d_ne_1, d_eq_1


@lru_cache(maxsize=None)
def _ci_options(a: int, c: int) -> frozenset[int]:
    s = a + c
    return frozenset(
        math.prod(m) for m in combinations_with_replacement(range(2, s + 1), a) if sum(m) == s
    )


def ci_degree_options(a: int, c: int) -> set[int]:
    """Degrees of complete intersections of ``a`` hypersurfaces of degree >= 2 with coindex ``c``."""
    if a < 1 or c < 0:
        raise ValueError("need a >= 1 and c >= 0")
    return set(_ci_options(a, c))


def ci_types(a: int, c: int) -> list[tuple[int, ...]]:
    """The degree multisets themselves, sorted."""
    s = a + c
    return [m for m in combinations_with_replacement(range(2, s + 1), a) if sum(m) == s]


def ci_compatible(Delta: int, a: int, c: int) -> bool:
    if c < 0:
        return False
    if a == 0:
        return Delta == 1 and c == 0
    return Delta in _ci_options(a, c)


def ci_restriction(base: CandidateSet) -> CandidateSet:
    """Tuples whose image can be a factorial complete intersection (coindex ``5 - d``)."""
    kept = [p for p in base if p.d != 1 and p.a + p.d <= 5 and ci_compatible(p.Delta, p.a, 5 - p.d)]
    return base.derive(f"Gamma5_{len(kept)}", kept, CI)


def enumerate_with_nu(ci: CandidateSet) -> CandidateSet:
    """Extend each 5-tuple by every ``nu`` between 0 and the 4-secant bound."""
    out = []
    for p in ci:
        for nu in range(0, le_barz_max_nu(p.lam, p.g, p.Delta, p.d, p.a, p.eps) + 1):
            out.append(p.with_nu(nu))
    return CandidateSet(f"Gamma6_{len(out)}", tuple(out), ci.provenance + (LE_BARZ,), SIX_FIELDS)


def fano_restriction(base: CandidateSet, ci: CandidateSet,
                     allowed: Iterable[tuple[int, int, int]]) -> CandidateSet:
    """Tuples outside ``ci`` whose ``(d, Delta, a)`` lies in a caller-supplied allowlist.

    The allowlist encodes which images are admissible prime Fano manifolds;
    that classification is external data and is never guessed here.
    """
    allow = set(allowed)
    inside = set(ci.tuples)
    kept = [p for p in base if p not in inside and (p.d, p.Delta, p.a) in allow]
    return base.derive(f"Gamma5_{len(kept)}", kept, "fano-allowlist")


def filter_set(cands: CandidateSet, pred: Callable[[Profile], bool], name: str, step: str) -> CandidateSet:
    return cands.derive(name, (p for p in cands if pred(p)), step)


# -- dimension-level classification ----------------------------------------


class PreliminaryRow(NamedTuple):
    case: str
    n: int
    r: int
    r_prime: int
    d1: int
    d2: int
    c: int


PRELIMINARY_FIELDS = ("n", "r", "r_prime", "d1", "d2", "c")


def _case_label(d1: int, c: int) -> str:
    if c == 0:
        return "cremona"
    return "quadratic" if d1 == 2 else "non-quadratic"


def preliminary_classification() -> list[PreliminaryRow]:
    """Integer solutions of the dimension relations with ``d1, d2 >= 2`` and ``r <= 3``.

    Bounds: ``d2 >= 2`` and ``n - r' - 1 >= 1`` force ``c <= r``; ``d1 >= 2``
    with ``r' <= n - 2`` forces ``n <= 2 r + 2``.
    """
    rows = []
    for r in range(1, 4):
        for n in range(r + 2, 2 * r + 3):
            for rp in range(1, n - 1):
                if (rp + 2) % (n - r - 1):
                    continue
                d1 = (rp + 2) // (n - r - 1)
                for c in range(0, r + 1):
                    if (r - c + 2) % (n - rp - 1):
                        continue
                    d2 = (r - c + 2) // (n - rp - 1)
                    if d1 >= 2 and d2 >= 2:
                        rows.append(PreliminaryRow(_case_label(d1, c), n, r, rp, d1, d2, c))
    rows.sort(key=lambda x: (x.r, x.n, x.r_prime, x.d1, x.d2))
    return rows


def linear_inverse_dimensions(d1: int, r_max: int = 3) -> list[tuple[int, int, int, int]]:
    """``(n, r, r', c)`` for maps of type ``(d1, 1)`` with ``1 <= r <= r_max``."""
    out = []
    for r in range(1, r_max + 1):
        for n in range(r + 2, r + 2 + 8):
            rp = (n - r - 1) * d1 - 2
            c = r + 2 - (n - rp - 1)
            if 0 <= rp <= n - 2 and c >= 0:
                out.append((n, r, rp, c))
    return out

