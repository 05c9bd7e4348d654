from __future__ import annotations

from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from birclass import fourfolds, tables
from birclass.fourfolds import admissible_values, kuznetsov_admissible, table2_report


@pytest.mark.parametrize("delta, ok", [
    (14, True), (26, True), (38, True), (42, True),
    (8, False), (18, False), (10, False), (6, False), (15, False), (20, False), (12, False),
])
def test_admissible_examples(delta, ok):
    assert kuznetsov_admissible(delta) is ok


def test_first_admissible_values():
    assert admissible_values(8, 3) == [14, 26, 38]


@given(st.integers(-50, 5000))
def test_admissible_necessary_conditions(delta):
    if kuznetsov_admissible(delta):
        assert delta > 6 and delta % 2 == 0 and delta % 4 and delta % 9 and delta % 5


def test_table2_delta_column():
    recs = table2_report()
    assert [r.delta for r in recs[:7]] == [8, 14, 14, 18, 12, 14, 14]
    assert [r.delta for r in recs[7:]] == [18, 18, 14, 14]
    assert all(r.matches for r in recs)
    assert all(r.delta % 6 in (0, 2) for r in recs)


def test_table2_admissibility():
    by_source = {r.source: r for r in table2_report()}
    assert by_source["1:IV"].admissible
    assert not by_source["1:VI"].admissible


def test_table2_cohomology_is_stored_only():
    recs = table2_report()
    assert all(len(r.reference_cohomology) == 3 for r in recs)


def test_strict_mismatch(monkeypatch):
    rows = tables.table2()
    bad = (replace(rows[0], delta=rows[0].delta + 6),) + rows[1:]
    monkeypatch.setattr(fourfolds, "table2", lambda: bad)
    with pytest.raises(fourfolds.DeltaMismatch):
        table2_report()
    loose = table2_report(strict=False)
    assert not loose[0].matches and all(r.matches for r in loose[1:])
