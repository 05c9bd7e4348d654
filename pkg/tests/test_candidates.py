from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from birclass import candidates as cand
from birclass.candidates import (
    CandidateSet,
    ci_degree_options,
    ci_restriction,
    ci_types,
    enumerate_base_set,
    fano_restriction,
    hodge_check,
    le_barz_max_nu,
    linear_inverse_dimensions,
    livorni_sommese_check,
    reduction_check,
    reduction_values,
)
from birclass.invariants import Profile, castelnuovo_bound_p4

SEVEN_TRIPLES = {(1, 5, 0), (3, 3, 1), (2, 4, 1), (4, 3, 2), (8, 2, 3), (6, 2, 2), (4, 2, 1)}
# non-CI prime Fano images of coindex <= 3 as (d, Delta, a); external data, supplied by the caller
FANO_ALLOWLIST = {(3, 5, 3), (2, 10, 4), (2, 12, 5), (2, 14, 6), (2, 16, 7)}


def test_base_counts(base_sets):
    full, nd, lin = base_sets
    assert (len(full), len(nd), len(lin)) == (3619, 2480, 1139)
    assert lin.fields == cand.FOUR_FIELDS
    assert all(p.d == 1 for p in lin)
    assert all(p.d != 1 for p in nd)


def test_base_members(base_sets):
    full, nd, _ = base_sets
    assert Profile(14, 15, 1, 5, 0) in nd
    assert not any(p.lam == 3 and p.g > 0 for p in full)


def test_base_satisfies_filters(base_sets):
    full, _, _ = base_sets
    for p in full:
        assert p.g <= castelnuovo_bound_p4(p.lam)
        assert hodge_check(p.lam, p.g, p.Delta, p.d)
        assert livorni_sommese_check(p.lam, p.g, p.Delta, p.d, p.a, p.eps)


def test_base_is_canonical(base_sets):
    full, _, _ = base_sets
    keys = [p.key() for p in full]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)


def test_parallel_equals_serial(base_sets):
    par = enumerate_base_set(jobs=3)
    for a, b in zip(base_sets, par):
        assert a.tuples == b.tuples and a.records() == b.records()


@pytest.mark.parametrize("args, ok", [
    ((14, 15, 1, 5), True), ((13, 12, 1, 5), True), ((3, 100, 1, 5), False)])
def test_hodge_check(args, ok):
    assert hodge_check(*args) is ok


@pytest.mark.parametrize("args, ok", [
    ((14, 15, 1, 5, 0, 0), True), ((11, 8, 4, 3, 2, 0), True), ((27, 0, 1, 5, 0, 0), False)])
def test_livorni_sommese_check(args, ok):
    assert livorni_sommese_check(*args) is ok


def test_ci_restriction(gamma174):
    assert len(gamma174) == 174
    assert {(p.Delta, p.d, p.a) for p in gamma174} == SEVEN_TRIPLES
    assert Profile(12, 10, 3, 3, 1) in gamma174
    assert not any((p.Delta, p.d, p.a) == (5, 2, 1) for p in gamma174)
    assert (gamma174.field_range("lam"), gamma174.field_range("g")) == ((7, 18), (0, 28))


@pytest.mark.parametrize("a, c, opts", [(2, 4, {8, 9}), (4, 4, {16}), (3, 3, {8}), (1, 1, {2}), (1, 0, set()), (3, 2, set())])
def test_ci_degree_options(a, c, opts):
    assert ci_degree_options(a, c) == opts


@given(st.integers(1, 6), st.integers(0, 8))
def test_ci_types_consistent(a, c):
    types = ci_types(a, c)
    for t in types:
        assert len(t) == a and sum(t) == a + c and min(t) >= 2
    prods = set()
    for t in types:
        prod = 1
        for e in t:
            prod *= e
        prods.add(prod)
    assert prods == ci_degree_options(a, c)
    assert (not types) == (a > c)


def test_ci_degree_options_rejects_bad_input():
    with pytest.raises(ValueError):
        ci_degree_options(0, 1)


def test_le_barz():
    assert le_barz_max_nu(14, 15, 1, 5, 0) == 0


def test_gamma6(gamma4237):
    assert len(gamma4237) == 4237
    assert gamma4237.fields == cand.SIX_FIELDS
    assert Profile(14, 15, 1, 5, 0, nu=0) in gamma4237
    assert [gamma4237.field_range(x) for x in ("lam", "g", "nu")] == [(11, 18), (7, 28), (0, 181)]


def test_negative_bound_contributes_nothing():
    ci = CandidateSet("x", (Profile(3, 0, 1, 5, 0),))
    assert le_barz_max_nu(3, 0, 1, 5, 0) < 0
    assert len(cand.enumerate_with_nu(ci)) == 0


def test_reduction_examples():
    assert reduction_values(Profile(14, 15, 1, 5, 0, nu=0)) == (13, 13, 13, 0)
    assert reduction_check(Profile(14, 15, 1, 5, 0, nu=0))
    assert reduction_check(Profile(18, 28, 3, 3, 1, nu=0))


def test_reduction_survivors(gamma4237):
    survivors = {p.six() for p in gamma4237 if reduction_check(p)}
    assert survivors == {(14, 15, 0, 1, 5, 0), (18, 28, 0, 3, 3, 1)}


def test_reduction_closed_form_matches_pluridegrees(gamma4237):
    # the closed forms assume a non-linear inverse, which holds on this cone
    for p in gamma4237:
        lam, g, nu, Dd, D, a = p.lam, p.g, p.nu, p.Dd, p.Delta, p.a
        closed = (-lam + 2 * g - nu - 3, Dd - 42 * lam + 18 * g + nu - 12 * a + 326,
                   lam * lam - 199 * lam + 62 * g - nu - D - 48 * a + 1674)
        assert reduction_values(p)[:3] == closed
        assert reduction_check(p) == cand.nef_big_check(p)


def test_fano_allowlist(base_sets, gamma174):
    _, nd, _ = base_sets
    assert len(fano_restriction(nd, gamma174, FANO_ALLOWLIST)) == 88
    assert len(fano_restriction(nd, gamma174, set())) == 0


def test_preliminary(preliminary):
    assert len(preliminary) == 26
    assert ("non-quadratic", 3, 1, 1, 3, 2, 1) in preliminary
    assert not any(r.d1 == 6 for r in preliminary)
    assert len(set(preliminary)) == len(preliminary)
    for row in preliminary:
        assert (row.case == "cremona") == (row.c == 0)


def test_linear_inverse_dimensions():
    assert linear_inverse_dimensions(3) == [(3, 1, 1, 2), (4, 2, 1, 2), (5, 3, 1, 2), (6, 3, 4, 4)]
    assert linear_inverse_dimensions(4) == [(4, 2, 2, 3), (5, 3, 2, 3)]


def test_candidate_set_dedup_and_order():
    a, b = Profile(12, 10, 3, 3, 1), Profile(11, 8, 4, 3, 2)
    cs = CandidateSet("s", (a, b, a))
    assert cs.tuples == (b, a)
    assert cs.records() == [(11, 8, 4, 3, 2), (12, 10, 3, 3, 1)]
    assert a in cs
