from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from birclass.invariants import (
    DimensionPair,
    Profile,
    binomial,
    castelnuovo_bound_p4,
    change_basis_matrix,
    coindex_from_row,
    cubic_invariants,
    cubic_multidegree,
    degrees_from_dimensions,
    delta_invariant,
    dimension_solve,
    hilbert_conditions,
    hilbert_consistent,
    hilbert_polynomial_solve,
    infer_inverse_base_dim,
    le_barz_bound,
    log_concave,
    pluridegrees,
    quartic_p4_invariants,
    quartic_p5_image,
    quartic_p5_invariants,
    quartic_p5_linear_closed_form,
    segre_multidegree,
    surface_p4_invariants,
)

profiles = st.builds(
    Profile,
    lam=st.integers(1, 60), g=st.integers(0, 120), Delta=st.integers(1, 30),
    d=st.integers(1, 8), a=st.integers(0, 10),
)


def test_binomial_vanishes_outside_range():
    assert binomial(5, 2) == 10
    assert binomial(2, 5) == 0
    assert binomial(4, -1) == 0


def test_eps_tracks_linear_inverse():
    assert Profile(9, 9, 8, 1, 3).eps == 1
    assert Profile(14, 15, 1, 5, 0).eps == 0


@pytest.mark.parametrize("args, expected", [
    ((6, 3, 5, 0), (3, 4)),
    ((8, 2, 5, 0), (3, 6)),
    ((5, 4, 1, 3), (3, 2)),
])
def test_dimension_solve(args, expected):
    dims = dimension_solve(*args)
    assert dims is not None
    assert (dims.r, dims.r_prime) == expected
    assert dims.c == args[3]


def test_dimension_solve_non_integral():
    assert dimension_solve(6, 3, 4, 0) is None


def test_degrees_from_dimensions_inverts_solver():
    dims = dimension_solve(6, 3, 5, 0)
    assert degrees_from_dimensions(6, dims.r, dims.r_prime, 0) == (3, 5)


def test_coindex_from_row():
    assert coindex_from_row(5, 3, 4, 1) == (2, 3)
    assert coindex_from_row(6, 3, 3, 5) == (4, 0)


@pytest.mark.parametrize("d1, d2, expected", [
    (3, 5, ((3, -1), (14, -5))),
    (2, 2, ((2, -1), (3, -2))),
])
def test_change_basis_matrix(d1, d2, expected):
    assert change_basis_matrix(d1, d2) == expected


@settings(max_examples=1000)
@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_change_basis_determinant(d1, d2):
    (p, q), (r, s) = change_basis_matrix(d1, d2)
    assert p * s - q * r == -1


@pytest.mark.parametrize("lam, bound", [(27, 100), (3, 0), (14, 22)])
def test_castelnuovo_bound(lam, bound):
    assert castelnuovo_bound_p4(lam) == bound


def test_hilbert_conditions():
    assert hilbert_conditions(6, 3, 5, 0, 4) == ((3, 77), (2, 28))
    assert hilbert_conditions(3, 3, 1, 2, 1) == ((3, 14), (2, 9))
    # d2 = 1 drops the ceiling term
    assert hilbert_conditions(6, 2, 1, 0, 3)[1] == (1, 6)


@pytest.mark.parametrize("a", [0, 1, 2, 3])
def test_cubo_linear_curve_family(a):
    hp = hilbert_polynomial_solve(hilbert_conditions(3, 3, 1, a, 1), 1)
    assert (hp.degree, hp.sectional_genus) == (7 - a, 6 - 2 * a)


def test_hilbert_curve_polynomial():
    hp = hilbert_polynomial_solve(((3, 14), (2, 9)), 1)
    assert hp.coeffs == (Fraction(-1), Fraction(5))
    assert (hp(3), hp(2)) == (14, 9)
    assert hp.dim == 1


def test_hilbert_overdetermined_inconsistent():
    assert hilbert_polynomial_solve(((3, 14), (2, 9), (1, 7)), 1) is None
    assert not hilbert_consistent(((3, 14), (2, 9)), 1, 5, 3)
    assert hilbert_consistent(((3, 14), (2, 9)), 1, 5, 2)


def test_hilbert_rejects_repeated_arguments():
    with pytest.raises(ValueError):
        hilbert_polynomial_solve(((3, 14), (3, 14)), 1)


def test_cubic_invariants_examples():
    cd, _ = cubic_invariants(Profile(14, 15, 1, 5, 0))
    assert (cd.KH2, cd.K2H, cd.K3) == (0, 0, 0)
    cd, _ = cubic_invariants(Profile(11, 8, 4, 3, 2))
    assert (cd.KH2, cd.K2H, cd.K3) == (-8, 2, 10)
    _, ss = cubic_invariants(Profile(13, 12, 1, 5, 0))
    assert ss.chiOS == 4


@settings(max_examples=1000)
@given(profiles)
def test_noether_identity(p):
    _, ss = cubic_invariants(p)
    assert ss.KS2 + ss.c2TS == 12 * ss.chiOS


@given(profiles)
def test_whitney_relations(p):
    cd, _ = cubic_invariants(p)
    assert cd.c1H2 == -cd.KH2
    assert cd.c1H2 == 7 * cd.H3 + cd.s1H2
    assert cd.c2H == 21 * cd.H3 + 7 * cd.s1H2 + cd.s2H
    assert cd.c3 == 35 * cd.H3 + 21 * cd.s1H2 + 7 * cd.s2H + cd.s3


@given(profiles)
def test_multidegree_shape(p):
    md = cubic_multidegree(p)
    assert len(md) == 7
    assert md[0] == 1 and md[1] == 3
    assert md[6] == p.Delta and md[5] == p.Delta * p.d


@given(profiles)
def test_multidegree_both_paths(p):
    cd, _ = cubic_invariants(p)
    assert segre_multidegree(6, 3, 3, p.lam, cd.segre()) == cubic_multidegree(p)


def test_multidegree_examples():
    assert cubic_multidegree(Profile(14, 15, 1, 5, 0)) == (1, 3, 9, 13, 11, 5, 1)
    assert cubic_multidegree(Profile(18, 28, 3, 3, 1)) == (1, 3, 9, 9, 9, 9, 3)
    assert cubic_multidegree(Profile(15, 19, 12, 1, 3)) == (1, 3, 9, 12, 12, 12, 12)


@given(st.integers(1, 40), st.integers(1, 2), st.integers(1, 30), st.integers(0, 12))
def test_quartic_p5_segre_forms(lam, d, Delta, a):
    inv = quartic_p5_invariants(lam, d, Delta, a)
    seg = segre_multidegree(5, 4, 3, lam, [inv.s3, inv.s2H, inv.s1H2])
    assert seg == inv.multidegree_segre
    assert inv.multidegree_segre == (1, 4, 16 - lam, 2 * a - 4 * inv.eps + 6, Delta * d, Delta)


def test_pluridegrees_examples():
    def pd(p):
        return tuple(pluridegrees(cubic_invariants(p)[0], p.nu or 0))

    assert pd(Profile(14, 15, 1, 5, 0, nu=0)) == (14, 14, 14, 14)
    assert pd(Profile(13, 12, 1, 5, 0, nu=0)) == (13, 9, 2, 0)
    assert pd(Profile(12, 10, 3, 3, 1, nu=0)) == (12, 6, 0, 0)


@given(profiles, st.integers(0, 50))
def test_pluridegree_leading_term(p, nu):
    # d0 is H^3 on the reduction
    assert pluridegrees(cubic_invariants(p)[0], nu).d0 == p.lam + nu


@pytest.mark.parametrize("p, delta", [
    (Profile(14, 15, 1, 5, 0), 14),
    (Profile(12, 10, 3, 3, 1), 18),
    (Profile(10, 6, 8, 2, 3), 14),
])
def test_delta_examples(p, delta):
    assert delta_invariant(p) == delta


def test_le_barz_bound_row_iv():
    assert le_barz_bound(14, 15, 1, 5, 0) == 0


def test_quartic_p4_examples():
    inv = quartic_p4_invariants(9, 1)
    assert (inv.g, inv.chi, inv.K2, inv.Delta_required) == (8, 2, -5, 3)
    assert quartic_p4_invariants(16, 1).Delta_required == 3
    assert quartic_p4_invariants(10, 2).Delta_required == -1
    with pytest.raises(ValueError):
        quartic_p4_invariants(9, 0)


@given(st.integers(1, 80), st.integers(1, 10))
def test_surface_p4_matches_closed_forms(lam, a):
    assert surface_p4_invariants(lam, a, 0) == quartic_p4_invariants(lam, a)


def test_quartic_p5_examples():
    assert quartic_p5_image(9, 1) == (8, 3)
    inv = quartic_p5_invariants(9, 1, 8, 3)
    assert inv.g == 9 and inv.consistent
    assert inv.multidegree_segre == (1, 4, 7, 8, 8, 8)
    assert quartic_p5_image(6, 1) == (18, 8)
    assert quartic_p5_invariants(6, 1, 18, 8).g == 2


def test_quartic_p5_quadratic_branch_empty():
    # Delta = d = 2 forces a = 1, and no degree satisfies the surface relation
    assert not any(quartic_p5_invariants(lam, 2, 2, 1).consistent for lam in range(1, 200))


@given(st.integers(1, 200))
def test_quartic_p5_closed_form(lam):
    assert quartic_p5_image(lam, 1) == quartic_p5_linear_closed_form(lam)


def test_quartic_p5_rejects_other_degrees():
    with pytest.raises(ValueError):
        quartic_p5_invariants(9, 3, 8, 3)


@pytest.mark.parametrize("md, r", [
    ((1, 3, 9, 14, 16, 16, 16), 3),
    ((1, 3, 9, 12, 12, 12, 12), 2),
    ((1, 3, 9, 9, 9, 9, 9), 1),
    ((1, 4, 6, 6, 6, 6), 1),
    ((1, 4, 7, 8, 8, 8), 2),
    ((1, 4, 7, 8, 8), 2),
])
def test_infer_inverse_base_dim(md, r):
    assert infer_inverse_base_dim(md) == r


@given(st.data())
def test_trailing_run_extension(data):
    """Lengthening the trailing run by k at fixed length lowers the value by k."""
    m = data.draw(st.integers(2, 8))
    steps = data.draw(st.lists(st.integers(1, 20), min_size=m - 1, max_size=m - 1))
    prefix = [1]
    for s in steps:
        prefix.append(prefix[-1] + s)
    top = prefix[-1] + data.draw(st.integers(1, 20))
    run = data.draw(st.integers(1, 5))
    md = prefix + [top] * run
    k = data.draw(st.integers(0, m - 1))
    extended = prefix[: m - k] + [top] * (run + k)
    assert len(extended) == len(md)
    assert infer_inverse_base_dim(extended) == infer_inverse_base_dim(md) - k


def test_log_concave():
    assert log_concave((1, 4, 7, 8, 8, 8))
    assert not log_concave((1, 4, 3, 4, 4, 4))
    assert not log_concave((1, 4, 1, 6, 6, 6))


def test_dimension_pair_is_tuple():
    assert DimensionPair(3, 4, 0) == (3, 4, 0)
