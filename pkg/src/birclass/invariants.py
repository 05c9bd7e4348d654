"""Closed-form numerical invariants of special birational transformations.

Everything here is exact: integers where the formulas are integral, and
:class:`fractions.Fraction` where a formula carries a denominator. Nothing in
this module rounds.

A transformation ``P^n --> Z`` of type ``(d1, d2)`` is summarised by a
:class:`Profile`. The cubic case (``n = 6``, ``d1 = 3``) has the richest set
of formulas: canonical and Chern degrees of the base locus, its multidegree,
the pluridegrees of its minimal reduction, and the discriminant of the Hassett
divisor cut on cubic fourfolds.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb, factorial
from typing import NamedTuple, Sequence

Number = int | Fraction


def binomial(m: int, j: int) -> int:
    """Binomial coefficient, zero outside ``0 <= j <= m`` (also for m < 0)."""
    if j < 0 or m < 0 or j > m:
        return 0
    return comb(m, j)


def as_int(x: Number) -> int | None:
    """Return ``x`` as an int if it is integral, else None."""
    if isinstance(x, int):
        return x
    return x.numerator if x.denominator == 1 else None


@dataclass(frozen=True)
class Profile:
    """Discrete signature of a candidate transformation.

    ``d`` is the degree of the inverse map, ``Delta`` the degree of the image
    and ``a`` its codimension. ``nu`` is the number of points blown up on the
    minimal reduction of the base locus, when known. ``eps`` is 1 exactly when
    the inverse is linear; it is fixed at construction.
    """

    lam: int
    g: int
    Delta: int
    d: int
    a: int
    nu: int | None = None
    n: int = 6
    d1: int = 3
    eps: int = field(init=False, repr=False, compare=True)

    def __post_init__(self) -> None:
        object.__setattr__(self, "eps", 1 if self.d == 1 else 0)

    @property
    def Dd(self) -> int:
        return self.Delta * self.d

    def key(self) -> tuple[int, ...]:
        """Canonical sort key: (lambda, g, Delta, d, a, nu)."""
        return (self.lam, self.g, self.Delta, self.d, self.a,
                -1 if self.nu is None else self.nu)

    def five(self) -> tuple[int, int, int, int, int]:
        return (self.lam, self.g, self.Delta, self.d, self.a)

    def six(self) -> tuple[int, int, int, int, int, int]:
        return (self.lam, self.g, self.nu or 0, self.Delta, self.d, self.a)

    def with_nu(self, nu: int | None) -> Profile:
        return replace(self, nu=nu)


class DimensionPair(NamedTuple):
    r: int
    r_prime: int
    c: int


def dimension_solve(n: int, d1: int, d2: int, c: int) -> DimensionPair | None:
    """Base-locus dimensions ``(r, r')`` of a type ``(d1, d2)`` map of coindex ``c``.

    Returns None when ``r`` is not an integer, or when the inverse relations
    do not give back ``(d1, d2)``.
    """
    if n < 3 or d1 < 1 or d2 < 1 or c < 0 or d1 * d2 <= 1:
        raise ValueError(f"dimension_solve precondition violated: {(n, d1, d2, c)}")
    num = n * d1 * d2 - n * d2 - d1 * d2 - d2 - c + 2
    den = d1 * d2 - 1
    if num % den:
        return None
    r = num // den
    rp = (n - r - 1) * d1 - 2
    if n - r - 1 == 0 or n - rp - 1 == 0:
        return None
    if Fraction(rp + 2, n - r - 1) != d1 or Fraction(r - c + 2, n - rp - 1) != d2:
        return None
    return DimensionPair(r, rp, c)


def degrees_from_dimensions(n: int, r: int, r_prime: int, c: int) -> tuple[Fraction, Fraction] | None:
    """Inverse relations: ``d1 = (r'+2)/(n-r-1)``, ``d2 = (r-c+2)/(n-r'-1)``."""
    if n - r - 1 == 0 or n - r_prime - 1 == 0:
        return None
    return Fraction(r_prime + 2, n - r - 1), Fraction(r - c + 2, n - r_prime - 1)


def coindex_from_row(n: int, r: int, d1: int, d2: int) -> tuple[int, int]:
    """``(r', c)`` determined by ``n, r, d1, d2``."""
    rp = (n - r - 1) * d1 - 2
    return rp, r + 2 - d2 * (n - rp - 1)


def change_basis_matrix(d1: int, d2: int) -> tuple[tuple[int, int], tuple[int, int]]:
    """Matrix expressing ``(H', E')`` in terms of ``(H, E)`` on the blow-up."""
    return ((d1, -1), (d1 * d2 - 1, -d2))


def castelnuovo_bound_p4(lam: int) -> Fraction:
    """Castelnuovo bound for the genus of a non-degenerate curve of degree ``lam`` in P^4."""
    m = (lam - 2) // 3
    return m * (lam - 4 - (m - 1) * Fraction(3, 2))


# -- Hilbert polynomials ----------------------------------------------------

HilbertConditions = tuple[tuple[int, int], ...]


def hilbert_conditions(n: int, d1: int, d2: int, a: int, r_prime: int) -> HilbertConditions:
    """Values of ``chi(O_B(t))`` forced on the base locus, as ``(t, chi)`` pairs."""
    N = n + a
    ceil_term = 1 if d2 > 1 else 0  # ceil((d2-1)/d2)
    conds = [
        (d1, binomial(n + d1, d1) - N - 1),
        (d1 - 1, binomial(n + d1 - 1, d1 - 1) + ceil_term - 1),
    ]
    if r_prime <= n - 3:
        for j in range(2, n - r_prime):
            conds.append((d1 - j, binomial(n + d1 - j, d1 - j)))
    return tuple(conds)


def _solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> tuple[bool, list[Fraction] | None]:
    """Gauss-Jordan elimination over Q.

    Returns ``(consistent, solution)``; the solution is None when the system
    is consistent but underdetermined.
    """
    m = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
    if any(all(x == 0 for x in row[:-1]) and row[-1] != 0 for row in m):
        return False, None
    if len(pivots) < ncols:
        return True, None
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = m[i][-1]
    return True, sol


def _backward_difference(coeffs: Sequence[Fraction]) -> list[Fraction]:
    """Coefficients of ``P(t) - P(t-1)`` given those of ``P`` (ascending)."""
    out = [Fraction(0)] * max(len(coeffs) - 1, 1)
    for k, ck in enumerate(coeffs):
        # t^k - (t-1)^k = -sum_{j<k} C(k,j) (-1)^{k-j} t^j
        for j in range(k):
            out[j] -= ck * comb(k, j) * (-1) ** (k - j)
    return out


@dataclass(frozen=True)
class HilbertPolynomial:
    """``chi(O_B(t))`` as ascending coefficients in ``t``."""

    coeffs: tuple[Fraction, ...]

    def __call__(self, t: int) -> Fraction:
        return sum((c * t**k for k, c in enumerate(self.coeffs)), Fraction(0))

    @property
    def dim(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree(self) -> Fraction:
        return self.coeffs[-1] * factorial(self.dim)

    @property
    def sectional_genus(self) -> Fraction:
        # the curve section has Hilbert polynomial nabla^{r-1} P = deg*t + 1 - g
        c = list(self.coeffs)
        for _ in range(self.dim - 1):
            c = _backward_difference(c)
        return 1 - c[0]


def _genus_row(r: int) -> list[Fraction]:
    """Linear form ``coeffs -> (nabla^{r-1} P)(0)``."""
    row = []
    for k in range(r + 1):
        c = [Fraction(0)] * (r + 1)
        c[k] = Fraction(1)
        for _ in range(r - 1):
            c = _backward_difference(c)
        row.append(c[0])
    return row


def hilbert_polynomial_solve(conds: HilbertConditions, r: int) -> HilbertPolynomial | None:
    """Degree-``r`` polynomial through the conditions.

    Returns None if an overdetermined system is inconsistent. Raises
    ``ValueError`` when there are fewer than ``r + 1`` conditions.
    """
    if len({t for t, _ in conds}) != len(conds):
        raise ValueError("Hilbert condition arguments must be distinct")
    if len(conds) < r + 1:
        raise ValueError(f"need {r + 1} conditions for a degree-{r} polynomial, got {len(conds)}")
    rows = [[Fraction(t) ** k for k in range(r + 1)] for t, _ in conds]
    ok, sol = _solve_exact(rows, [Fraction(chi) for _, chi in conds])
    if not ok:
        return None
    assert sol is not None
    return HilbertPolynomial(tuple(sol))


def hilbert_consistent(conds: HilbertConditions, r: int, lam: int, g: int) -> bool:
    """Whether some degree-``r`` polynomial with degree ``lam`` and sectional
    genus ``g`` meets all conditions (works when underdetermined too)."""
    rows = [[Fraction(t) ** k for k in range(r + 1)] for t, _ in conds]
    rhs = [Fraction(chi) for _, chi in conds]
    lead = [Fraction(0)] * r + [Fraction(1)]
    rows += [lead, _genus_row(r)]
    rhs += [Fraction(lam, factorial(r)), Fraction(1 - g)]
    return _solve_exact(rows, rhs)[0]


# -- cubic case: n = 6, d1 = 3, three-dimensional base locus ---------------


class Intersections(NamedTuple):
    """Top intersection numbers of a canonical divisor ``K`` and a polarisation ``H`` on a threefold."""

    KH2: int
    K2H: int
    K3: int
    H3: int

    def cube(self, x: int, y: int) -> int:
        """``(xK + yH)^3``."""
        return x**3 * self.K3 + 3 * x * x * y * self.K2H + 3 * x * y * y * self.KH2 + y**3 * self.H3

    def square_h(self, x: int, y: int) -> int:
        """``(xK + yH)^2 . H``."""
        return x * x * self.K2H + 2 * x * y * self.KH2 + y * y * self.H3

    def blow_down(self, nu: int) -> Intersections:
        """Numbers on the reduction obtained by contracting ``nu`` exceptional planes."""
        return Intersections(self.KH2 - 2 * nu, self.K2H + 4 * nu, self.K3 - 8 * nu, self.H3 + nu)


@dataclass(frozen=True)
class CanonicalDegrees:
    KH2: int
    K2H: int
    K3: int
    H3: int
    c1H2: int
    c2H: int
    c3: int
    s1H2: int
    s2H: int
    s3: int

    @property
    def intersections(self) -> Intersections:
        return Intersections(self.KH2, self.K2H, self.K3, self.H3)

    def segre(self) -> tuple[int, int, int]:
        """``(s3, s2.H, s1.H^2)``, indexed as :func:`segre_multidegree` expects."""
        return (self.s3, self.s2H, self.s1H2)


@dataclass(frozen=True)
class SurfaceSectionInvariants:
    KSHS: int
    KS2: int
    chiOS: int
    c2TS: int


def _require_cubic(p: Profile) -> None:
    if p.n != 6 or p.d1 != 3:
        raise ValueError(f"cubic formulas need n=6, d1=3; got n={p.n}, d1={p.d1}")


def cubic_invariants(p: Profile) -> tuple[CanonicalDegrees, SurfaceSectionInvariants]:
    _require_cubic(p)
    lam, g, D, Dd, a, e = p.lam, p.g, p.Delta, p.Dd, p.a, p.eps
    KH2 = -2 * lam + 2 * g - 2
    K2H = -39 * lam + 14 * g + Dd - 12 * a + 12 * e + 331
    K3 = lam * lam - 77 * lam + 14 * g - 3 * Dd - D - 12 * a + 60 * e + 688
    c1H2 = 2 * lam - 2 * g + 2
    c2H = -29 * lam + 16 * g - Dd + 227
    c3 = 230 * lam - 102 * g + 11 * Dd - D - 1842
    # Whitney: c(T_B) = c(T_P6|B) * s(N), c(T_P6) = (1+H)^7
    s1H2 = c1H2 - 7 * lam
    s2H = c2H - 21 * lam - 7 * s1H2
    s3 = c3 - 35 * lam - 21 * s1H2 - 7 * s2H
    canon = CanonicalDegrees(KH2, K2H, K3, lam, c1H2, c2H, c3, s1H2, s2H, s3)
    surf = SurfaceSectionInvariants(
        KSHS=-lam + 2 * g - 2,
        KS2=-42 * lam + 18 * g + Dd - 12 * a + 12 * e + 327,
        chiOS=-6 * lam + 3 * g - a + e + 46,
        c2TS=-30 * lam + 18 * g - Dd + 225,
    )
    return canon, surf


def cubic_multidegree(p: Profile) -> tuple[int, ...]:
    _require_cubic(p)
    return (1, 3, 9, 27 - p.lam, -7 * p.lam + 2 * p.g + 79, p.Dd, p.Delta)


def segre_multidegree(n: int, d1: int, r: int, deg: int, segre: Sequence[Number]) -> tuple[Number, ...]:
    """Multidegree ``(delta_0, ..., delta_n)`` from the Segre classes of the base locus.

    ``segre[i]`` is the degree of ``s_{r-i}(N) . H^i`` for ``i = 0..r-1``.
    """
    if len(segre) != r:
        raise ValueError(f"expected {r} Segre degrees, got {len(segre)}")
    out: list[Number] = [0] * (n + 1)
    for k in range(n + 1):
        v = d1 ** (n - k) - binomial(n - k, r - k) * (d1 ** (r - k) if r >= k else 0) * deg
        for i in range(k, r):
            v -= binomial(n - k, i - k) * d1 ** (i - k) * segre[i]
        out[n - k] = v
    return tuple(out)


class Pluridegrees(NamedTuple):
    d0: int
    d1: int
    d2: int
    d3: int


def pluridegrees_of(x: Intersections) -> Pluridegrees:
    """``d_j = (K + H)^j . H^(3-j)``."""
    return Pluridegrees(
        x.H3,
        x.KH2 + x.H3,
        x.K2H + 2 * x.KH2 + x.H3,
        x.K3 + 3 * x.K2H + 3 * x.KH2 + x.H3,
    )


def pluridegrees(cd: CanonicalDegrees, nu: int) -> Pluridegrees:
    if nu < 0:
        raise ValueError("nu must be non-negative")
    return pluridegrees_of(cd.intersections.blow_down(nu))


def reduction_intersections(p: Profile) -> Intersections:
    """Intersection numbers on the minimal reduction (``nu = 0`` when unset)."""
    return cubic_invariants(p)[0].intersections.blow_down(p.nu or 0)


def delta_invariant(p: Profile) -> int:
    """Discriminant of the Hassett divisor containing the surface section of the base locus."""
    _require_cubic(p)
    lam = p.lam
    return -lam * lam + 6 * p.Dd - 27 * lam + 18 * p.g - 36 * p.a + 36 * p.eps + 288


def le_barz_bound(lam: int, g: int, Delta: int, d: int, a: int) -> Fraction:
    """Upper bound for ``nu`` from the count of 4-secant lines to the surface section."""
    Dd = Delta * d
    F = Fraction
    return (
        F(1, 8) * lam**4 - F(1, 2) * lam**2 * Dd + F(1, 2) * Dd**2 + F(3, 4) * lam**3
        - 3 * lam**2 * g + F(1, 2) * lam * Dd
        + 5 * g * Dd + 3 * lam**2 * a - 6 * Dd * a - F(433, 8) * lam**2 + 20 * lam * g
        + 13 * g**2 + F(25, 2) * Dd
        - 7 * lam * a - 30 * g * a + 18 * a**2 + F(2825, 4) * lam - 98 * g - 21 * a - 2969
    )


# -- quartic transformations -----------------------------------------------


@dataclass(frozen=True)
class SurfaceP4Invariants:
    lam: int
    a: int
    eps: int
    chi: Fraction
    g: Fraction
    K2: Fraction
    c2: Fraction
    s1H: Fraction
    s2: Fraction
    Delta_required: Fraction

    @property
    def integral(self) -> bool:
        return all(as_int(x) is not None for x in (self.chi, self.g, self.K2, self.c2, self.Delta_required))


def quartic_p4_invariants(lam: int, a: int) -> SurfaceP4Invariants:
    """Invariants of the base surface of a quartic map ``P^4 --> Z`` with non-linear inverse."""
    if a < 1:
        raise ValueError("a must be >= 1")
    h = Fraction(1, 2)
    return SurfaceP4Invariants(
        lam=lam, a=a, eps=0,
        chi=Fraction(6 * lam + 3 * a - 55),
        g=Fraction(4 * lam + a - 29),
        K2=h * lam**2 + Fraction(27, 2) * lam + 13 * a - 180,
        c2=-h * lam**2 + Fraction(117, 2) * lam + 23 * a - 480,
        s1H=Fraction(-12 * lam - 2 * a + 60),
        s2=-h * lam**2 + Fraction(217, 2) * lam + 33 * a - 780,
        Delta_required=h * lam**2 - Fraction(25, 2) * lam - a + 76,
    )


def surface_p4_invariants(lam: int, a: int, eps: int) -> SurfaceP4Invariants:
    """Same quantities derived from first principles, for either inverse degree.

    Hilbert conditions at ``t = 4, 3`` fix ``g`` and ``chi``; the double point
    formula for surfaces in P^4 fixes ``K^2``; ``N`` has Segre class
    ``c(T_S) / (1+H)^5``; the image degree is the last multidegree entry.
    """
    g = 4 * lam + a - eps - 29
    chi = 6 * lam + 3 * a - 4 * eps - 55
    HK = 2 * g - 2 - lam
    K2 = Fraction(lam * lam - 10 * lam - 5 * HK + 12 * chi, 2)
    c2 = 12 * chi - K2
    s1H = -HK - 5 * lam
    s2 = c2 + 5 * HK + 15 * lam
    md = segre_multidegree(4, 4, 2, lam, [s2, s1H])
    return SurfaceP4Invariants(lam, a, eps, Fraction(chi), Fraction(g), K2, c2,
                               Fraction(s1H), Fraction(s2), Fraction(md[4]))


@dataclass(frozen=True)
class QuarticP5Invariants:
    lam: int
    d: int
    Delta: Number
    a: Number
    eps: int
    g: Number
    s1H2: Number
    s2H: Number
    s3: Number
    multidegree_type: tuple[Number, ...]
    multidegree_segre: tuple[Number, ...]
    codim_residual: Number
    surface_residual: Number

    @property
    def consistent(self) -> bool:
        return self.codim_residual == 0 and self.surface_residual == 0


def quartic_p5_invariants(lam: int, d: int, Delta: Number, a: Number) -> QuarticP5Invariants:
    """Invariants of the base threefold of a quartic map ``P^5 --> Z``, ``d`` in {1, 2}."""
    if d not in (1, 2):
        raise ValueError("inverse degree must be 1 or 2")
    e = 1 if d == 1 else 0
    Dd = Delta * d
    return QuarticP5Invariants(
        lam=lam, d=d, Delta=Delta, a=a, eps=e,
        g=4 * lam - 2 * e + a - 28,
        s1H2=-12 * lam - 2 * a + 4 * e + 58,
        s2H=-Dd + 96 * lam + 32 * a - 64 * e - 672,
        s3=20 * Dd - 640 * lam - Delta - 320 * a + 640 * e + 5184,
        multidegree_type=(1, 4, 16 - lam, Delta * d * d, Dd, Delta),
        multidegree_segre=(1, 4, 16 - lam, 2 * a - 4 * e + 6, Dd, Delta),
        codim_residual=a - (Fraction(Delta * d * d, 2) + 2 * e - 3),
        surface_residual=lam * lam - 2 * Dd - 25 * lam - 2 * a + 16 * e + 150,
    )


def quartic_p5_image(lam: int, d: int) -> tuple[Fraction, Fraction]:
    """``(Delta, a)`` solving the codimension and surface relations jointly."""
    e = 1 if d == 1 else 0
    Delta = Fraction(lam * lam - 25 * lam + 12 * e + 156, d * d + 2 * d)
    a = Delta * d * d / 2 + 2 * e - 3
    return Delta, a


def quartic_p5_linear_closed_form(lam: int) -> tuple[Fraction, Fraction]:
    """Closed form of :func:`quartic_p5_image` for a linear inverse."""
    return (Fraction(lam * lam, 3) - Fraction(25 * lam, 3) + 56,
            Fraction(lam * lam, 6) - Fraction(25 * lam, 6) + 27)


# -- multidegree helpers ---------------------------------------------------


def log_concave(md: Sequence[Number]) -> bool:
    """``delta_i^2 >= delta_{i-1} delta_{i+1}`` for all interior ``i``."""
    return all(md[i] ** 2 >= md[i - 1] * md[i + 1] for i in range(1, len(md) - 1))


def infer_inverse_base_dim(md: Sequence[Number]) -> int:
    """Dimension of the inverse base locus read off a linear-inverse multidegree.

    ``n - t`` where ``t`` is the length of the maximal run of equal entries at
    the end of ``md`` (the last entry included). Only meaningful when the
    inverse is linear.
    """
    n = len(md) - 1
    run = 1
    while run <= n and md[n - run] == md[n]:
        run += 1
    return n - run
